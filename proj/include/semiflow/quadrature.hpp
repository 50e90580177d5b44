#pragma once

#include <cstddef>
#include <functional>

#include "semiflow/types.hpp"

namespace semiflow {

struct QuadResult {
    Cplx value{};
    double error = 0.0;      // accumulated error estimate
    std::size_t panels = 0;  // leaf panels evaluated
};

// Adaptive Gauss-Kronrod 7/15 over [a, b] for a complex-valued integrand of
// a real parameter. Splits depth-first until each panel meets its share of
// max(abs_tol, rel_tol * |whole-interval estimate|).
QuadResult integrate_interval(const std::function<Cplx(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, std::size_t max_panels);

// Straight-segment path integral int_{[z0, z1]} f(w) dw.
QuadResult integrate_segment(const std::function<Cplx(Cplx)>& f, Cplx z0, Cplx z1,
                             double abs_tol, double rel_tol, std::size_t max_panels);

struct LineIntegral {
    Cplx value{};       // truncated integral plus tail correction
    double y_cut = 0.0; // truncation actually used
    double tail = 0.0;  // |tail correction| added
    double error = 0.0;
    std::size_t panels = 0;
};

// Integral over the whole real line with geometric panels concentrating near
// 0 and a C/y^2-model tail correction beyond the cut. y_cut = 0 doubles the
// cut adaptively from 1024 until the raw tail estimate drops below 1e-3 of
// the integral (throws TailTooFat at the cap).
LineIntegral integrate_line(const std::function<Cplx(double)>& f, double abs_tol, double rel_tol,
                            double y_cut, std::size_t max_panels);

}  // namespace semiflow
