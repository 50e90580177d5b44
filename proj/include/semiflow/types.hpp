#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "semiflow/errors.hpp"

namespace semiflow {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Sector of directions Omega(theta1, theta2) = { zeta : -theta1 < arg zeta < theta2 }.
// theta1 bounds the clockwise (negative-argument) side, theta2 the
// counterclockwise side. A meaningful sector has both angles positive and
// theta1 + theta2 <= pi. Sectors computed from finite grids are outer
// estimates and say so.
struct Sector {
    double theta1 = 0.0;
    double theta2 = 0.0;
    bool outer_estimate = false;

    bool valid() const { return theta1 > 0.0 && theta2 > 0.0 && theta1 + theta2 <= kPi + 1e-12; }

    bool contains(Cplx zeta) const {
        double a = std::arg(zeta);
        return -theta1 < a && a < theta2;
    }
};

// Rectangular sample grid in the right half-plane: the cartesian product of
// re_values x im_values. The default layout concentrates samples where the
// geometry is interesting: log-spaced real parts just right of the line
// Re z = k, tangent-spaced imaginary parts clustering near the real axis.
struct SampleGrid {
    std::vector<double> re_values;
    std::vector<double> im_values;

    std::size_t size() const { return re_values.size() * im_values.size(); }

    // Log-spaced Re in [k + re_lo, k + re_hi], tan-spaced Im in [-im_max, im_max].
    static SampleGrid standard(double k = 0.0, int n_re = 64, int n_im = 65,
                               double re_lo = 1e-3, double re_hi = 1e4, double im_max = 1e4) {
        if (n_re < 2 || n_im < 2) throw OutOfRangeParameter("SampleGrid: need at least 2 points per axis");
        if (!(re_lo > 0.0) || !(re_hi > re_lo) || !(im_max > 0.0))
            throw OutOfRangeParameter("SampleGrid: bad extents");
        SampleGrid g;
        g.re_values.reserve(static_cast<std::size_t>(n_re));
        const double e0 = std::log10(re_lo), e1 = std::log10(re_hi);
        for (int i = 0; i < n_re; ++i)
            g.re_values.push_back(k + std::pow(10.0, e0 + (e1 - e0) * i / (n_re - 1)));
        g.im_values.reserve(static_cast<std::size_t>(n_im));
        const double u_max = std::atan(im_max);
        for (int j = 0; j < n_im; ++j)
            g.im_values.push_back(std::tan(-u_max + 2.0 * u_max * j / (n_im - 1)));
        // Keep the endpoints and (for odd counts) the axis sample exact.
        g.im_values.front() = -im_max;
        g.im_values.back() = im_max;
        if (n_im % 2 == 1) g.im_values[static_cast<std::size_t>(n_im / 2)] = 0.0;
        return g;
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (double x : re_values)
            for (double y : im_values) fn(Cplx(x, y));
    }
};

// Two-sided bound on arg f over { Re z >= k }: lo <= arg f <= hi on the
// sampled grid. gamma1/gamma2 are the clamped one-sided openings used by the
// classical envelope integral; the signed values keep one-sided information
// (e.g. a constant generator with positive argument has lo = hi > 0).
struct ArgEnvelope {
    double k = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double gamma1 = 0.0;  // max(0, -lo)
    double gamma2 = 0.0;  // max(0, hi)
    bool degenerate = false;
};

inline bool is_finite(Cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);
// Complex constant in the literal syntax accepted by the parser ("2", "0.5i",
// "1+0.5i", "1-0.5i").
std::string format_complex(Cplx v);

}  // namespace semiflow
