#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiflow {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed. `offset` is the 0-based position of the
// offending character (for end-of-input failures, of the last character).
// `expected` lists the tokens that would have been accepted there.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected)
        : Error(msg), offset(offset), expected(std::move(expected)) {}
    std::size_t offset;
    std::vector<std::string> expected;
};

// A numeric parameter lies outside its admissible range.
struct OutOfRangeParameter : Error {
    using Error::Error;
};

// Evaluation requested outside the open right half-plane Re z > 0.
struct DomainError : Error {
    using Error::Error;
};

// A computation produced a non-finite value.
struct NumericOverflow : Error {
    using Error::Error;
};

// An iterative limit or sequence failed to settle within tolerance.
struct NotConverged : Error {
    using Error::Error;
};

// Line means along the boundary failed to settle (Hardy norms).
struct NonConvergent : Error {
    using Error::Error;
};

// Adaptive quadrature exhausted its panel budget before meeting tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

// The truncated boundary integral's tail estimate stayed above its cap.
struct TailTooFat : Error {
    using Error::Error;
};

// Newton inversion failed even after continuation subdivisions; evidence
// that the target lies outside the image of the half-plane.
struct NewtonDiverged : Error {
    using Error::Error;
};

// A caller-visible precondition was violated.
struct PreconditionFailed : Error {
    using Error::Error;
};

// An argument envelope touched or crossed +-pi/2, so tan(gamma) blows up.
struct DegenerateEnvelope : Error {
    using Error::Error;
};

// The integrator hit too many steps before reaching the requested time.
struct StepLimitExceeded : Error {
    using Error::Error;
};

// The solution of the initial value problem left the right half-plane at an
// interior time. Carries the bisected exit time and the last interior state.
struct DomainExit : Error {
    DomainExit(const std::string& msg, double s, std::complex<double> u)
        : Error(msg), s(s), u(u) {}
    double s;
    std::complex<double> u;
};

// The reconstruction step of the composition test hit the branch cut of the
// principal power; the offending points are reported, never resolved by fiat.
struct BranchAmbiguity : Error {
    using Error::Error;
};

}  // namespace semiflow
