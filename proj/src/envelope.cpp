#include "semiflow/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "semiflow/checks.hpp"
#include "semiflow/errors.hpp"

namespace semiflow {

namespace {

// Shared interpolation for both envelope curves.  Index i of `angles` governs
// the interval [u[i], u[i+1]); the final angle extends past u.back().
double polyline_at(const std::vector<double>& u, const std::vector<double>& b,
                   const std::vector<double>& angles, double x) {
    const double back_slack = 1e-12 * (1.0 + std::fabs(u.front()));
    if (x < u.front() - back_slack)
        throw PreconditionFailed("abscissa precedes the envelope base");
    x = std::max(x, u.front());
    if (x >= u.back()) return b.back() + (x - u.back()) * std::tan(angles.back());
    const auto it = std::upper_bound(u.begin(), u.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - u.begin()) - 1;
    return b[i] + (x - u[i]) * std::tan(angles[i]);
}

}  // namespace

double EnvelopeBound::lower_at(double x) const { return polyline_at(u, b1, angle_lo, x); }
double EnvelopeBound::upper_at(double x) const { return polyline_at(u, b2, angle_hi, x); }

EnvelopeBound envelope_bounds(const Generator& g, Cplx z0, double u_max, int n,
                              std::size_t n_re, std::size_t n_im) {
    if (!(z0.real() > 0.0)) throw DomainError("envelope base point must lie in the right half-plane");
    if (n < 2) throw PreconditionFailed("envelope needs at least 2 knots");
    const double x0 = z0.real();
    if (!(u_max > x0)) throw PreconditionFailed("envelope horizon must exceed Re of the base point");

    EnvelopeBound bound;
    bound.z0 = z0;
    bound.u.resize(static_cast<std::size_t>(n));
    const double du = (u_max - x0) / (n - 1);
    for (int i = 0; i < n; ++i) bound.u[static_cast<std::size_t>(i)] = x0 + du * i;
    bound.u.back() = u_max;

    bound.angle_lo.reserve(bound.u.size());
    bound.angle_hi.reserve(bound.u.size());
    for (const double k : bound.u) {
        const ArgEnvelope env = arg_envelope(g, k, SampleGrid::standard(k, n_re, n_im));
        if (env.degenerate)
            throw DegenerateEnvelope("slope bracket is vertical at abscissa " + format_double(k));
        bound.angle_lo.push_back(env.lo);
        bound.angle_hi.push_back(env.hi);
    }

    bound.b1.resize(bound.u.size());
    bound.b2.resize(bound.u.size());
    bound.b1[0] = bound.b2[0] = z0.imag();
    for (std::size_t i = 0; i + 1 < bound.u.size(); ++i) {
        const double step = bound.u[i + 1] - bound.u[i];
        bound.b1[i + 1] = bound.b1[i] + step * std::tan(bound.angle_lo[i]);
        bound.b2[i + 1] = bound.b2[i] + step * std::tan(bound.angle_hi[i]);
    }

    // The knot sums use the bracket at the left end of each interval, which is
    // the widest point because the brackets tighten rightward.  The excess of
    // each interval against its continuum limit is at most the bracket change
    // across the interval, so the total telescopes; stray negative differences
    // from grid sampling are clipped rather than credited.
    double widening = 0.0;
    for (std::size_t i = 0; i + 1 < bound.u.size(); ++i) {
        const double step = bound.u[i + 1] - bound.u[i];
        widening += step * std::max(0.0, std::tan(bound.angle_hi[i]) - std::tan(bound.angle_hi[i + 1]));
        widening += step * std::max(0.0, std::tan(bound.angle_lo[i + 1]) - std::tan(bound.angle_lo[i]));
    }
    bound.widening_bound = widening;
    return bound;
}

ContainmentReport verify_containment(const EnvelopeBound& bound, const Trajectory& traj,
                                     double tol) {
    if (!(tol >= 0.0)) throw PreconditionFailed("containment tolerance must be >= 0");
    if (traj.samples.empty()) throw PreconditionFailed("containment check needs a nonempty trajectory");

    ContainmentReport rep;
    bool first = true;
    for (const TrajectorySample& s : traj.samples) {
        const double lo = bound.lower_at(s.z.real());
        const double hi = bound.upper_at(s.z.real());
        const double below = lo - s.z.imag();
        const double above = s.z.imag() - hi;
        ++rep.samples_checked;
        const double worst = std::max(below, above);
        if (first || worst > std::max(rep.worst_below, rep.worst_above)) {
            rep.argworst = s.z;
            first = false;
        }
        rep.worst_below = std::max(rep.worst_below, below);
        rep.worst_above = std::max(rep.worst_above, above);
        const double slack =
            tol * (1.0 + std::fabs(s.z.imag()) + std::max(std::fabs(lo), std::fabs(hi)));
        if (below > slack || above > slack) rep.ok = false;
    }
    return rep;
}

double moebius_sector_threshold(double a, double b, double eps) {
    if (!(a >= 0.0) || !(b > a)) throw PreconditionFailed("threshold requires 0 <= a < b");
    if (!(eps > 0.0) || !(eps < kPi / 2))
        throw PreconditionFailed("threshold angle must lie in (0, pi/2)");
    const double s = std::sin(eps);
    const double k = (b - a - (a + b) * s) / (2.0 * s);
    return std::max(0.0, k);
}

std::string envelope_csv(const EnvelopeBound& bound) {
    std::string out = "u,B1,B2\n";
    for (std::size_t i = 0; i < bound.u.size(); ++i) {
        out += format_double(bound.u[i]);
        out += ',';
        out += format_double(bound.b1[i]);
        out += ',';
        out += format_double(bound.b2[i]);
        out += '\n';
    }
    return out;
}

}  // namespace semiflow
