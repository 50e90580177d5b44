#pragma once

// Trajectory envelopes.  When the generator has nonnegative real part, every
// orbit moves rightward, so it can be parametrized by its abscissa s = Re z.
// The slope dIm/dRe equals tan(arg f) and arg f is bracketed over half-planes
// {Re z >= s}; summing the bracket slopes over an abscissa grid produces two
// polygonal curves that contain the orbit.

#include <cstddef>
#include <string>
#include <vector>

#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

struct EnvelopeBound {
    Cplx z0;                   // orbit start; u.front() == Re z0
    std::vector<double> u;     // abscissa knots, strictly increasing
    std::vector<double> b1;    // lower envelope ordinates at the knots
    std::vector<double> b2;    // upper envelope ordinates at the knots
    // Slope angles governing [u[i], u[i+1]); the last entry also governs
    // everything beyond u.back(), since its bracket covers {Re z >= u.back()}.
    std::vector<double> angle_lo;
    std::vector<double> angle_hi;
    // How much wider the knot sums can be than their continuum limits; the
    // per-interval excesses telescope because the brackets tighten as the
    // abscissa grows.
    double widening_bound = 0.0;

    double lower_at(double x) const;
    double upper_at(double x) const;
};

// Builds the envelope for the orbit through z0 on [Re z0, u_max] with n knots.
// Each knot's slope bracket is sampled on a standard grid shifted to start at
// that abscissa.  Throws DegenerateEnvelope when the argument of the generator
// reaches +-pi/2, where the slope bound is vertical and carries no information.
EnvelopeBound envelope_bounds(const Generator& g, Cplx z0, double u_max, int n,
                              std::size_t n_re = 64, std::size_t n_im = 65);

struct ContainmentReport {
    std::size_t samples_checked = 0;
    double worst_below = 0.0;  // most positive value of lower_at(Re) - Im
    double worst_above = 0.0;  // most positive value of Im - upper_at(Re)
    Cplx argworst{};
    bool ok = true;
};

// Checks that every trajectory sample lies between the two envelope curves,
// within tol * (1 + |Im| + |bound|) at each sample.
ContainmentReport verify_containment(const EnvelopeBound& bound, const Trajectory& traj,
                                     double tol = 1e-7);

// Smallest rightward shift k >= 0 such that the slope bracket of the rational
// generator (z + a)/(z + b) over {Re z >= k} fits inside [-eps, eps]:
//   k = max(0, (b - a - (a + b) sin eps) / (2 sin eps)).
double moebius_sector_threshold(double a, double b, double eps);

// CSV rendering with header "u,B1,B2", one row per knot.
std::string envelope_csv(const EnvelopeBound& bound);

}  // namespace semiflow
