#pragma once

// Machinery for the space of analytic functions on the right half-plane with
// uniformly bounded vertical-line p-means,
//   ||phi|| = sup_{x>0} ( (1/pi) * integral |phi(x+iy)|^p dy )^{1/p},  p > 1.
// Composition with a half-plane self-map acts on this space; the operations
// here compute the norms by boundary quadrature, recognize composition
// operators among black-box operators, test the norm law e^{-delta t / p},
// evaluate the dissipativity pairing against the support functional, and
// check that complex-time extensions of a parabolic flow act contractively.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "semiflow/checks.hpp"
#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

struct HardyFunction {
    double p = 2.0;  // integrability exponent, > 1
    std::function<Cplx(Cplx)> eval;
    Cplx operator()(Cplx z) const { return eval(z); }
};

// Boundary-quadrature policy for the norm integrals.  The means are computed
// on the vertical lines Re z = x for each x in x_sequence and extrapolated
// linearly to x -> 0+.  Defaults suit closed-form integrands; for integrands
// backed by ODE or Newton evaluation use flow_boundary_quadrature(), whose
// looser panel tolerance sits above the evaluation noise.
struct BoundaryQuadrature {
    std::vector<double> x_sequence{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double y_cut = 0.0;              // 0 = extend the cut adaptively
    std::size_t max_panels = 20000;  // budget per vertical line
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
};

BoundaryQuadrature flow_boundary_quadrature();

// Rational basis b_n(z) = (z-1)^n / (z+1)^{2/p + n}; the exponent 2/p makes
// |b_n|^p decay exactly like 1/y^2 on vertical lines, so every member has
// finite norm for every p.
HardyFunction basis_function(int n, double p);

// Norming family (z-a)^n / ((z+1)^{2/p} (z+conj a)^n) for Re a > 0: on the
// boundary |z-a| = |z+conj a|, so |phi(iy)|^p = 1/(1+y^2) and the norm is 1
// regardless of a, n, and p.
HardyFunction norming_function(Cplx a, int n, double p);

struct NormResult {
    double value = 0.0;  // extrapolated x -> 0+ norm
    std::vector<std::pair<double, double>> line_means;  // (x, p-mean on Re z = x)
};

// Vertical-line p-means along quad.x_sequence, extrapolated to the boundary.
// Throws NonConvergent when the means fail to settle along the ladder, and
// TailTooFat when a line integral's tail resists truncation.
NormResult hp_norm(const HardyFunction& phi, const BoundaryQuadrature& quad = {});

// phi composed with a self-map of the half-plane.  The map is spot-checked at
// a fixed sample of interior points; leaving the half-plane there raises
// DomainError.
HardyFunction compose(const HardyFunction& phi, std::function<Cplx(Cplx)> self_map);

// An operator presented only through its images of the basis: action(n) must
// return the image of b_n.
struct BlackBoxOperator {
    double p = 2.0;
    std::function<HardyFunction(int)> action;
};

// The operator phi -> phi o F packaged as a black box on the basis.
BlackBoxOperator composition_operator(std::function<Cplx(Cplx)> self_map, double p);

// Composition operators are exactly the bounded operators T for which
//   (a) F := (T b_0)^{-p/2} - 1 maps the half-plane into itself,
//   (b) F(R)/R has a finite nonzero limit along the real axis, and
//   (c) T b_n = (T b_0) * (1 - 2 (T b_0)^{p/2})^n for every n;
// when all three hold, T is composition with the reconstructed F.
struct CompositionCharacterization {
    std::size_t points_checked = 0;
    double min_re_F = 0.0;  // condition (a): worst Re F over the grid
    Cplx argmin_F{};
    Cplx angular_slope{};  // condition (b): accelerated limit of F(R)/R
    bool slope_converged = false;
    double max_residual = 0.0;  // condition (c): sup-norm residual over the grid
    int worst_n = 0;
    Cplx arg_worst{};
    std::vector<std::pair<Cplx, Cplx>> F_samples;  // (z, F(z)) for downstream use
    std::vector<Cplx> branch_ambiguities;  // grid points skipped: (T b_0)^{p/2} near the cut
    std::vector<std::string> failures;     // human-readable failed conditions
    bool holomorphic_self_map = false;     // (a)
    bool nonzero_angular_slope = false;    // (b)
    bool multiplicative_structure = false; // (c)
    bool is_composition = false;
};

CompositionCharacterization characterize_composition(const BlackBoxOperator& T, int n_max,
                                                     const SampleGrid& grid,
                                                     const std::vector<double>& radii =
                                                         default_radii(),
                                                     double tol = 1e-6);

// Norm law for the composition semigroup of the flow of g: the operator norm
// is e^{-delta t / p} with delta the angular derivative of g at infinity.
// Test functions only ever witness a lower bound, so the contract is
// measured_lower <= predicted (+ tolerance), with equality for dilations.
struct NormLawResult {
    double t = 0.0;
    double p = 2.0;
    double delta = 0.0;
    double predicted = 0.0;
    double measured_lower = 0.0;
    struct Probe {
        std::string name;
        double base_norm;
        double composed_norm;
        double ratio;
    };
    std::vector<Probe> probes;
};

NormLawResult operator_norm_law(const Generator& g, double t, double p,
                                const BoundaryQuadrature& quad = flow_boundary_quadrature(),
                                const FlowParams& fp = {});

// Pairing of the generator against the support functional of the norming
// family: the boundary integral
//   (1/pi) * integral f(iy) [ n/(iy-a) - 2/(p(iy+1)) - n/(iy+conj a) ] dy/(1+y^2)
// evaluated near the axis and extrapolated to it, against the closed form
//   (2n/|a-1|^2) [ f(a)(conj a - 1)/(a+1) - f(1) Re a (conj a - 1)/(conj a + 1) ] - f(1)/p.
// Dissipativity of the flow shows as Re(value) <= 0.
struct PairingResult {
    Cplx quadrature_value{};
    Cplx closed_form{};
    double residual = 0.0;
    std::vector<std::pair<double, Cplx>> raw_values;  // per-abscissa integrals
};

PairingResult dissipativity_pairing(const Generator& g, Cplx a, int n, double p,
                                    const BoundaryQuadrature& quad = {});

// For a parabolic flow with Re f > 0 and vanishing angular derivative, the
// complex-time extensions inside the admissible sector act as composition
// operators of norm 1.  Each displacement zeta is probed for contractivity of
// the basis norms, the three-part characterization, and additivity against
// the doubled displacement; displacements outside the sector are expected to
// fail extension and are reported rather than thrown.
struct SectorExtensionReport {
    double p = 2.0;
    int n_max = 3;
    struct ZetaProbe {
        Cplx zeta;
        bool extended = false;
        std::string failure;  // diagnostic when the extension could not be built
        double max_norm_ratio = 0.0;
        bool contractive = false;
        bool is_composition = false;
        double characterization_residual = 0.0;
        double additivity_residual = 0.0;
        bool ok = false;
    };
    std::vector<ZetaProbe> probes;
    std::size_t extended_count = 0;
    bool all_extended_ok = true;
};

SectorExtensionReport contractive_extension_check(const Generator& g,
                                                  const std::vector<Cplx>& zeta_samples, double p,
                                                  const BoundaryQuadrature& quad =
                                                      flow_boundary_quadrature(),
                                                  int n_max = 3);

}  // namespace semiflow
