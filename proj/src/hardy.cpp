#include "semiflow/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiflow/errors.hpp"
#include "semiflow/koenigs.hpp"
#include "semiflow/quadrature.hpp"

namespace semiflow {

namespace {

constexpr double kContractivitySlack = 1e-4;  // norm ratios may exceed 1 by this much
constexpr double kAdditivityTol = 1e-6;       // doubled-displacement agreement
constexpr double kSlopeFloor = 1e-6;          // smallest angular slope accepted as nonzero

void require_exponent(double p) {
    if (!(p > 1.0)) throw OutOfRangeParameter("integrability exponent must be > 1");
}

Cplx ipow(Cplx z, int n) {
    Cplx r(1.0, 0.0);
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

void require_ladder(const std::vector<double>& xs) {
    if (xs.empty()) throw PreconditionFailed("boundary quadrature needs at least one abscissa");
    double prev = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        if (!(x > 0.0) || !(x < prev))
            throw PreconditionFailed("boundary abscissas must decrease strictly toward 0");
        prev = x;
    }
}

// Linear extrapolation to x = 0 through (x_prev, v_prev) and (x_last, v_last).
template <typename V>
V to_axis(double x_prev, const V& v_prev, double x_last, const V& v_last) {
    return v_last - (v_prev - v_last) * (x_last / (x_prev - x_last));
}

}  // namespace

BoundaryQuadrature flow_boundary_quadrature() {
    BoundaryQuadrature q;
    q.abs_tol = 3e-8;
    q.rel_tol = 3e-8;
    return q;
}

HardyFunction basis_function(int n, double p) {
    if (n < 0) throw OutOfRangeParameter("basis index must be >= 0");
    require_exponent(p);
    const double expo = 2.0 / p + n;
    return {p, [n, expo](Cplx z) { return ipow(z - 1.0, n) / std::pow(z + 1.0, expo); }};
}

HardyFunction norming_function(Cplx a, int n, double p) {
    if (!(a.real() > 0.0))
        throw OutOfRangeParameter("norming parameter must lie in the right half-plane");
    if (n < 0) throw OutOfRangeParameter("norming index must be >= 0");
    require_exponent(p);
    const Cplx ac = std::conj(a);
    const double expo = 2.0 / p;
    return {p, [a, ac, n, expo](Cplx z) {
                return ipow(z - a, n) / (std::pow(z + 1.0, expo) * ipow(z + ac, n));
            }};
}

NormResult hp_norm(const HardyFunction& phi, const BoundaryQuadrature& quad) {
    require_exponent(phi.p);
    if (!phi.eval) throw PreconditionFailed("norm of an empty function handle");
    require_ladder(quad.x_sequence);

    NormResult out;
    for (double x : quad.x_sequence) {
        auto integrand = [&phi, x](double y) -> Cplx {
            return {std::pow(std::abs(phi.eval(Cplx(x, y))), phi.p), 0.0};
        };
        LineIntegral li;
        try {
            li = integrate_line(integrand, quad.abs_tol, quad.rel_tol, quad.y_cut,
                                quad.max_panels);
        } catch (const QuadratureFailure& e) {
            throw NonConvergent(std::string("vertical-line mean did not converge: ") + e.what());
        }
        const double mean = std::pow(std::max(0.0, li.value.real()) / kPi, 1.0 / phi.p);
        out.line_means.emplace_back(x, mean);
    }

    if (out.line_means.size() == 1) {
        out.value = out.line_means.front().second;
        return out;
    }
    const auto& [x_prev, m_prev] = out.line_means[out.line_means.size() - 2];
    const auto& [x_last, m_last] = out.line_means.back();
    if (std::fabs(m_prev - m_last) > 1e-3 * (1.0 + std::fabs(m_last)))
        throw NonConvergent("vertical-line means are not settling along the abscissa ladder (" +
                            format_double(m_prev) + " vs " + format_double(m_last) + ")");
    out.value = to_axis(x_prev, m_prev, x_last, m_last);
    return out;
}

HardyFunction compose(const HardyFunction& phi, std::function<Cplx(Cplx)> self_map) {
    if (!phi.eval || !self_map) throw PreconditionFailed("composition needs both handles");
    static const Cplx spots[] = {Cplx(1.0, 0.0),    Cplx(0.5, 0.7),  Cplx(2.0, -3.0),
                                 Cplx(1e-3, 10.0),  Cplx(40.0, 250.0), Cplx(0.03, -0.4),
                                 Cplx(7.0, 0.0),    Cplx(0.2, 1e3)};
    for (Cplx z : spots) {
        const Cplx w = self_map(z);
        if (!is_finite(w) || !(w.real() > 0.0))
            throw DomainError("inner map leaves the right half-plane at " + format_complex(z) +
                              " -> " + format_complex(w));
    }
    auto outer = phi.eval;
    return {phi.p,
            [outer, inner = std::move(self_map)](Cplx z) { return outer(inner(z)); }};
}

BlackBoxOperator composition_operator(std::function<Cplx(Cplx)> self_map, double p) {
    require_exponent(p);
    if (!self_map) throw PreconditionFailed("composition operator needs a map");
    return {p, [self_map = std::move(self_map), p](int n) {
                return compose(basis_function(n, p), self_map);
            }};
}

CompositionCharacterization characterize_composition(const BlackBoxOperator& T, int n_max,
                                                     const SampleGrid& grid,
                                                     const std::vector<double>& radii,
                                                     double tol) {
    if (n_max < 2) throw PreconditionFailed("characterization needs at least 2 basis images");
    if (!T.action) throw PreconditionFailed("operator has no action");
    if (radii.size() < 4) throw PreconditionFailed("characterization needs at least 4 radii");
    require_exponent(T.p);
    const double half_p = 0.5 * T.p;

    std::vector<HardyFunction> image;
    image.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) image.push_back(T.action(n));

    CompositionCharacterization rep;
    rep.min_re_F = std::numeric_limits<double>::infinity();

    const auto ambiguous = [](Cplx v) {
        return v.real() < 0.0 && std::abs(v.imag()) <= 1e-9 * std::abs(v);
    };

    grid.for_each([&](Cplx z) {
        ++rep.points_checked;
        const Cplx v0 = image[0].eval(z);
        if (!is_finite(v0))
            throw NumericOverflow("image of the base function is not finite at " +
                                  format_complex(z));
        if (ambiguous(v0)) {
            rep.branch_ambiguities.push_back(z);
            return;
        }
        const Cplx s = std::pow(v0, half_p);
        const Cplx F = 1.0 / s - 1.0;
        rep.F_samples.emplace_back(z, F);
        if (F.real() < rep.min_re_F) {
            rep.min_re_F = F.real();
            rep.argmin_F = z;
        }
        const Cplx q = 1.0 - 2.0 * s;
        Cplx qn(1.0, 0.0);
        for (int n = 1; n <= n_max; ++n) {
            qn *= q;
            const double resid = std::abs(image[static_cast<std::size_t>(n)].eval(z) - v0 * qn);
            if (resid > rep.max_residual) {
                rep.max_residual = resid;
                rep.worst_n = n;
                rep.arg_worst = z;
            }
        }
    });
    if (rep.F_samples.empty())
        throw BranchAmbiguity("every grid point put the base image on the branch cut");

    std::vector<Cplx> slope_samples;
    for (double R : radii) {
        const Cplx v0 = image[0].eval(Cplx(R, 0.0));
        if (ambiguous(v0)) continue;
        const Cplx F = 1.0 / std::pow(v0, half_p) - 1.0;
        slope_samples.push_back(F / R);
    }
    if (slope_samples.size() < 4)
        throw BranchAmbiguity("too few usable radii: the base image hugs the branch cut");
    const AccelLimit slope = accelerate(slope_samples, 1e-6);
    rep.angular_slope = slope.limit;
    rep.slope_converged = slope.converged;

    rep.holomorphic_self_map = rep.min_re_F > -1e-10;
    rep.nonzero_angular_slope = slope.converged && std::abs(slope.limit) > kSlopeFloor;
    rep.multiplicative_structure = rep.max_residual <= tol;
    rep.is_composition =
        rep.holomorphic_self_map && rep.nonzero_angular_slope && rep.multiplicative_structure;

    if (!rep.holomorphic_self_map)
        rep.failures.push_back("reconstructed map leaves the half-plane: min Re F = " +
                               format_double(rep.min_re_F) + " at " + format_complex(rep.argmin_F));
    if (!rep.nonzero_angular_slope)
        rep.failures.push_back("angular slope at infinity " + format_complex(slope.limit) +
                               (slope.converged ? " is zero" : " did not converge"));
    if (!rep.multiplicative_structure)
        rep.failures.push_back("basis images break the power structure: residual " +
                               format_double(rep.max_residual) + " at n = " +
                               std::to_string(rep.worst_n) + ", z = " +
                               format_complex(rep.arg_worst));
    return rep;
}

NormLawResult operator_norm_law(const Generator& g, double t, double p,
                                const BoundaryQuadrature& quad, const FlowParams& fp) {
    require_exponent(p);
    if (!(t >= 0.0)) throw PreconditionFailed("norm law needs t >= 0");
    const AngularLimit al = angular_derivative_at_infinity(g);
    if (!al.converged)
        throw NotConverged("angular derivative at infinity did not settle; norm law needs it");

    NormLawResult out;
    out.t = t;
    out.p = p;
    out.delta = al.delta;
    out.predicted = std::exp(-al.delta * t / p);

    auto flow_map = [&g, t, &fp](Cplx z) { return evolve(g, z, t, 0.0, fp); };
    const std::pair<std::string, HardyFunction> probes[] = {
        {"basis0", basis_function(0, p)},
        {"basis1", basis_function(1, p)},
        {"norming(2;1)", norming_function(Cplx(2.0, 0.0), 1, p)},
    };
    for (const auto& [name, fn] : probes) {
        const double base = hp_norm(fn, quad).value;
        const double composed = hp_norm(compose(fn, flow_map), quad).value;
        const double ratio = composed / base;
        out.probes.push_back({name, base, composed, ratio});
        out.measured_lower = std::max(out.measured_lower, ratio);
    }
    return out;
}

PairingResult dissipativity_pairing(const Generator& g, Cplx a, int n, double p,
                                    const BoundaryQuadrature& quad) {
    require_exponent(p);
    if (n < 1) throw OutOfRangeParameter("pairing index must be >= 1");
    if (!(a.real() > 0.0))
        throw OutOfRangeParameter("pairing parameter must lie in the right half-plane");
    if (std::abs(a - Cplx(1.0, 0.0)) < 1e-12)
        throw OutOfRangeParameter("pairing parameter must differ from the base point 1");
    require_ladder(quad.x_sequence);

    const Cplx ac = std::conj(a);
    const double dn = n;
    auto at_abscissa = [&](double x) -> Cplx {
        auto integrand = [&, x](double y) -> Cplx {
            const Cplx z(x, y);
            const Cplx kernel =
                dn / (z - a) - 2.0 / (p * (z + 1.0)) - dn / (z + ac);
            return g(z) * kernel / (kPi * (1.0 + y * y));
        };
        try {
            return integrate_line(integrand, quad.abs_tol, quad.rel_tol, quad.y_cut,
                                  quad.max_panels)
                .value;
        } catch (const QuadratureFailure& e) {
            throw NonConvergent(std::string("pairing integral did not converge: ") + e.what());
        }
    };

    PairingResult out;
    if (quad.x_sequence.size() == 1) {
        const double x = quad.x_sequence.front();
        out.quadrature_value = at_abscissa(x);
        out.raw_values.emplace_back(x, out.quadrature_value);
    } else {
        // The integral is smooth in the abscissa, so one linear extrapolation
        // step through the two smallest abscissas removes the O(x) offset of
        // evaluating near (rather than on) the axis.
        const double x_prev = quad.x_sequence[quad.x_sequence.size() - 2];
        const double x_last = quad.x_sequence.back();
        const Cplx v_prev = at_abscissa(x_prev);
        const Cplx v_last = at_abscissa(x_last);
        out.raw_values.emplace_back(x_prev, v_prev);
        out.raw_values.emplace_back(x_last, v_last);
        out.quadrature_value = to_axis(x_prev, v_prev, x_last, v_last);
    }

    const Cplx fa = g(a);
    const Cplx f1 = g(Cplx(1.0, 0.0));
    out.closed_form = (2.0 * dn / std::norm(a - Cplx(1.0, 0.0))) *
                          (fa * (ac - 1.0) / (a + 1.0) -
                           f1 * a.real() * (ac - 1.0) / (ac + 1.0)) -
                      f1 / p;
    out.residual = std::abs(out.quadrature_value - out.closed_form);
    return out;
}

SectorExtensionReport contractive_extension_check(const Generator& g,
                                                  const std::vector<Cplx>& zeta_samples, double p,
                                                  const BoundaryQuadrature& quad, int n_max) {
    require_exponent(p);
    if (n_max < 2) throw PreconditionFailed("extension check needs n_max >= 2");
    if (zeta_samples.empty()) throw PreconditionFailed("extension check needs displacements");

    if (classify_type(g) != SemigroupType::Parabolic)
        throw PreconditionFailed(
            "extension check requires a parabolic flow; norms decay strictly otherwise");
    const RangeReport range = check_range_halfplane(g, SampleGrid::standard());
    if (!range.ok() || !(range.min_re > 0.0))
        throw PreconditionFailed("extension check requires Re f > 0 across the grid");
    const AngularLimit al = angular_derivative_at_infinity(g);
    if (!al.converged || std::fabs(al.delta) > 1e-6)
        throw PreconditionFailed(
            "extension check requires a vanishing angular derivative at infinity");

    const KoenigsMap km(g);
    SectorExtensionReport rep;
    rep.p = p;
    rep.n_max = n_max;

    std::vector<double> base_norm;
    base_norm.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        base_norm.push_back(hp_norm(basis_function(n, p), quad).value);

    const SampleGrid char_grid = SampleGrid::standard(0.0, 24, 25);

    for (const Cplx zeta : zeta_samples) {
        SectorExtensionReport::ZetaProbe probe;
        probe.zeta = zeta;
        try {
            auto shifted = [&km, zeta](Cplx z) { return km.extend(z, zeta); };

            double worst_ratio = 0.0;
            for (int n = 0; n <= n_max; ++n) {
                const double composed =
                    hp_norm(compose(basis_function(n, p), shifted), quad).value;
                worst_ratio = std::max(worst_ratio, composed / base_norm[static_cast<std::size_t>(n)]);
            }
            probe.max_norm_ratio = worst_ratio;
            probe.contractive = worst_ratio <= 1.0 + kContractivitySlack;

            const CompositionCharacterization ch = characterize_composition(
                composition_operator(shifted, p), n_max, char_grid, default_radii(), 1e-6);
            probe.is_composition = ch.is_composition;
            probe.characterization_residual = ch.max_residual;

            auto doubled = [&km, zeta](Cplx z) { return km.extend(z, 2.0 * zeta); };
            double additivity = 0.0;
            std::size_t index = 0;
            char_grid.for_each([&](Cplx z) {
                if (index++ % 53 != 0) return;
                const Cplx two_leg = shifted(shifted(z));
                const Cplx direct = doubled(z);
                for (int n = 0; n <= std::min(n_max, 2); ++n) {
                    const HardyFunction b = basis_function(n, p);
                    additivity = std::max(additivity, std::abs(b.eval(two_leg) - b.eval(direct)));
                }
            });
            probe.additivity_residual = additivity;

            probe.extended = true;
            probe.ok =
                probe.contractive && probe.is_composition && additivity <= kAdditivityTol;
        } catch (const Error& e) {
            probe.extended = false;
            probe.failure = e.what();
        }
        if (probe.extended) {
            ++rep.extended_count;
            if (!probe.ok) rep.all_extended_ok = false;
        }
        rep.probes.push_back(std::move(probe));
    }
    return rep;
}

}  // namespace semiflow
