#pragma once

#include <optional>
#include <vector>

#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

// One grid point where the half-plane flow-invariance inequality
//   Re( f(z) (conj z - 1)/(z + 1) ) <= Re z * Re( f(1) (conj z - 1)/(conj z + 1) )
// failed beyond slack.
struct InvarianceViolation {
    Cplx z;
    double lhs;
    double rhs;
};

struct FlowInvarianceReport {
    std::size_t points_checked = 0;
    double max_excess = 0.0;  // worst lhs - rhs over the grid
    std::vector<InvarianceViolation> violations;
    bool ok() const { return violations.empty(); }
};

FlowInvarianceReport check_flow_invariance(const Generator& g, const SampleGrid& grid,
                                           double tol = 1e-10);

struct RangeViolation {
    Cplx z;
    Cplx value;
};

struct RangeReport {
    std::size_t points_checked = 0;
    double min_re = 0.0;
    Cplx argmin{};
    std::vector<RangeViolation> violations;
    bool ok() const { return violations.empty(); }
};

// min Re f over the grid; violations where Re f < -tol*(1+|f|).
RangeReport check_range_halfplane(const Generator& g, const SampleGrid& grid, double tol = 1e-10);

// Doubling radii 100, 200, ..., 100*2^8 used for limits along the real axis.
std::vector<double> default_radii();

struct AccelLimit {
    Cplx limit;
    bool converged;
};

// Aitken delta-squared limit of a sequence sampled at doubling abscissas;
// monotonically decaying sequences ending below 1e-8 are declared zero.
AccelLimit accelerate(std::vector<Cplx> v, double tol);

struct AngularLimit {
    Cplx limit{};          // accelerated limit of f(R)/(R+1)
    double delta = 0.0;    // Re(limit); the imaginary part stays diagnostic
    bool converged = false;
    std::vector<Cplx> raw;  // the sampled values, for inspection
};

// Limit of f(R)/(R+1) along the positive real axis, accelerated over the
// doubling radii; limits below 1e-8 on a decaying sequence are declared 0.
AngularLimit angular_derivative_at_infinity(const Generator& g,
                                            const std::vector<double>& radii = default_radii(),
                                            double tol = 1e-7);

enum class SemigroupType { Hyperbolic, Parabolic };

// Hyperbolic iff the accelerated limit of f(R)/R has real part above tol;
// throws NotConverged when the limit does not settle.
SemigroupType classify_type(const Generator& g, const std::vector<double>& radii = default_radii(),
                            double tol = 1e-6);

// Signed bounds of arg f over the grid (all samples must satisfy Re z >= k).
// Throws DegenerateEnvelope when arg f leaves (-pi/2, pi/2); sets the
// degenerate flag and clamps when it touches the boundary.
ArgEnvelope arg_envelope(const Generator& g, double k, const SampleGrid& grid);

// Outer estimate of the admissible direction sector from grid bounds of
// arg f: theta1 = pi/2 + inf arg f, theta2 = pi/2 - sup arg f. Empty result
// when either angle is nonpositive.
std::optional<Sector> sector_of_analyticity(const Generator& g, const SampleGrid& grid);

struct ClassGSector {
    Sector sector;
    double delta1 = 0.0;  // -inf arg of f / (A (z+1)^(1-alpha)) over the grid
    double delta2 = 0.0;  // +sup of the same argument
};

// Direction sector of a class-g generator restricted to Re z >= k:
//   theta_i = (pi/2) min(alpha, 2-alpha) +- arg A - delta_i(k).
ClassGSector class_g_sector(const Generator& g, double k, const SampleGrid& grid);

}  // namespace semiflow
