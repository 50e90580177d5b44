#include "semiflow/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semiflow {

namespace {

double slack(double tol, double lhs, double rhs) { return tol * (1.0 + std::fabs(lhs) + std::fabs(rhs)); }

}  // namespace

// Aitken delta-squared on a doubling-radius sample sequence. Exact for a
// single geometric tail c*q^n, which covers both the 1/R and R^(-alpha)
// decays arising here; repeated passes clean up secondary terms.
AccelLimit accelerate(std::vector<Cplx> v, double tol) {
    bool decaying = true;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[i - 1]) * (1.0 + 1e-12)) decaying = false;
    if (decaying && std::abs(v.back()) < 1e-8) return {Cplx(0.0, 0.0), true};

    // Growing increments mean the sequence has no limit; Aitken applied anyway
    // would return the finite anti-limit of a geometric divergence.
    if (v.size() >= 3) {
        const double d1 = std::abs(v[v.size() - 1] - v[v.size() - 2]);
        const double d0 = std::abs(v[v.size() - 2] - v[v.size() - 3]);
        if (d1 > d0 * (1.0 + 1e-9) && d1 > tol * (1.0 + std::abs(v.back())))
            return {v.back(), false};
    }

    for (int round = 0; round < 3 && v.size() >= 3; ++round) {
        std::vector<Cplx> w;
        w.reserve(v.size() - 2);
        for (std::size_t i = 0; i + 2 < v.size(); ++i) {
            Cplx d2 = v[i + 2] - 2.0 * v[i + 1] + v[i];
            Cplx d1 = v[i + 2] - v[i + 1];
            w.push_back(std::abs(d2) < 1e-300 ? v[i + 2] : v[i + 2] - d1 * d1 / d2);
        }
        v = std::move(w);
    }
    Cplx lim = v.back();
    bool conv = v.size() >= 2 &&
                std::abs(v.back() - v[v.size() - 2]) <= tol * (1.0 + std::abs(v.back()));
    if (decaying && std::abs(lim) < 1e-8) return {Cplx(0.0, 0.0), true};
    return {lim, conv};
}

FlowInvarianceReport check_flow_invariance(const Generator& g, const SampleGrid& grid, double tol) {
    FlowInvarianceReport rep;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    const Cplx f1 = g(Cplx(1.0, 0.0));
    grid.for_each([&](Cplx z) {
        ++rep.points_checked;
        const Cplx zc = std::conj(z);
        const double lhs = (g(z) * (zc - 1.0) / (z + 1.0)).real();
        const double rhs = z.real() * (f1 * (zc - 1.0) / (zc + 1.0)).real();
        rep.max_excess = std::max(rep.max_excess, lhs - rhs);
        if (lhs > rhs + slack(tol, lhs, rhs)) rep.violations.push_back({z, lhs, rhs});
    });
    return rep;
}

RangeReport check_range_halfplane(const Generator& g, const SampleGrid& grid, double tol) {
    RangeReport rep;
    rep.min_re = std::numeric_limits<double>::infinity();
    grid.for_each([&](Cplx z) {
        ++rep.points_checked;
        const Cplx v = g(z);
        if (v.real() < rep.min_re) {
            rep.min_re = v.real();
            rep.argmin = z;
        }
        if (v.real() < -tol * (1.0 + std::abs(v))) rep.violations.push_back({z, v});
    });
    return rep;
}

std::vector<double> default_radii() {
    std::vector<double> r;
    double R = 100.0;
    for (int i = 0; i <= 8; ++i, R *= 2.0) r.push_back(R);
    return r;
}

AngularLimit angular_derivative_at_infinity(const Generator& g, const std::vector<double>& radii,
                                            double tol) {
    if (radii.size() < 4) throw PreconditionFailed("angular limit needs at least 4 radii");
    AngularLimit out;
    out.raw.reserve(radii.size());
    for (double R : radii) {
        if (!(R > 0.0)) throw PreconditionFailed("radii must be positive");
        out.raw.push_back(g(Cplx(R, 0.0)) / (R + 1.0));
    }
    auto acc = accelerate(out.raw, tol);
    out.limit = acc.limit;
    out.delta = acc.limit.real();
    out.converged = acc.converged;
    return out;
}

SemigroupType classify_type(const Generator& g, const std::vector<double>& radii, double tol) {
    if (radii.size() < 4) throw PreconditionFailed("classification needs at least 4 radii");
    std::vector<Cplx> v;
    v.reserve(radii.size());
    for (double R : radii) v.push_back(g(Cplx(R, 0.0)) / R);
    auto acc = accelerate(v, 1e-7);
    if (!acc.converged) throw NotConverged("limit of f(R)/R did not settle over the given radii");
    return acc.limit.real() > tol ? SemigroupType::Hyperbolic : SemigroupType::Parabolic;
}

ArgEnvelope arg_envelope(const Generator& g, double k, const SampleGrid& grid) {
    constexpr double kEdge = 1e-12;
    ArgEnvelope env;
    env.k = k;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool touched = false;
    grid.for_each([&](Cplx z) {
        if (z.real() < k - kEdge)
            throw PreconditionFailed("arg envelope: grid sample with Re z < k");
        const double a = std::arg(g(z));
        if (std::fabs(a) > kPi / 2 + kEdge)
            throw DegenerateEnvelope("arg f leaves (-pi/2, pi/2) at z = " + format_complex(z));
        if (std::fabs(a) >= kPi / 2 - kEdge) touched = true;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    });
    const double cap = kPi / 2 - kEdge;
    env.lo = std::clamp(lo, -cap, cap);
    env.hi = std::clamp(hi, -cap, cap);
    env.gamma1 = std::max(0.0, -env.lo);
    env.gamma2 = std::max(0.0, env.hi);
    env.degenerate = touched;
    return env;
}

std::optional<Sector> sector_of_analyticity(const Generator& g, const SampleGrid& grid) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    grid.for_each([&](Cplx z) {
        const double a = std::arg(g(z));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    });
    Sector s{kPi / 2 + lo, kPi / 2 - hi, true};
    // Angles below the grid's own angular resolution near the axis cannot be
    // distinguished from zero by an outer estimate; call the sector empty.
    constexpr double kAngularResolution = 1e-6;
    if (!(s.theta1 > kAngularResolution) || !(s.theta2 > kAngularResolution)) return std::nullopt;
    return s;
}

ClassGSector class_g_sector(const Generator& g, double k, const SampleGrid& grid) {
    if (g.kind() != GenKind::ClassG)
        throw PreconditionFailed("class_g_sector needs a class-g generator");
    const double alpha = g.param("alpha")->real();
    const Cplx A = *g.param("A");
    const double m = kPi / 2 * std::min(alpha, 2.0 - alpha);
    const double argA = std::arg(A);
    if (!(std::fabs(argA) < m))
        throw PreconditionFailed("class-g generator needs |arg A| < (pi/2) min(alpha, 2-alpha)");
    const ExprPtr rho = g.rho();
    double inf_arg = std::numeric_limits<double>::infinity();
    double sup_arg = -std::numeric_limits<double>::infinity();
    grid.for_each([&](Cplx z) {
        if (z.real() < k - 1e-12)
            throw PreconditionFailed("class_g_sector: grid sample with Re z < k");
        const Cplx lead = A * std::pow(z + 1.0, 1.0 - alpha);
        const Cplx ratio = rho ? (lead + eval_expr(*rho, z)) / lead : Cplx(1.0, 0.0);
        const double a = std::arg(ratio);
        inf_arg = std::min(inf_arg, a);
        sup_arg = std::max(sup_arg, a);
    });
    ClassGSector out;
    out.delta1 = -inf_arg;
    out.delta2 = sup_arg;
    out.sector = Sector{m + argA - out.delta1, m - argA - out.delta2, true};
    return out;
}

}  // namespace semiflow
