#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiflow/expression.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

enum class GenKind { Affine, Power, Moebius, ClassG, Expression };

// An infinitesimal generator candidate f on the right half-plane, evaluated
// with domain and finiteness checks. Catalog kinds carry a closed-form flow
// oracle F_zeta(z); derived generators (scaled/shifted) transport it.
class Generator {
  public:
    // f(z) = A (translation field).
    static Generator affine(Cplx A);
    // f(z) = z^(1-alpha), alpha in (0,1).
    static Generator power(double alpha);
    // f(z) = (z+a)/(z+b), 0 <= a < b.
    static Generator moebius(double a, double b);
    // f(z) = A*(z+1)^(1-alpha) + rho(z), alpha in (0,2); rho may be null (== 0).
    static Generator class_g(double alpha, Cplx A, ExprPtr rho = nullptr);
    // f given by an expression tree in z.
    static Generator expression(ExprPtr ast);

    // Checked evaluation: requires Re z > 0, finite result.
    Cplx operator()(Cplx z) const;

    GenKind kind() const { return kind_; }
    // Canonical generator-spec text; parseable for the catalog and expression
    // kinds, descriptive for derived ones.
    const std::string& text() const { return text_; }

    bool has_oracle() const { return static_cast<bool>(oracle_); }
    // Closed-form flow F_zeta(z) where known (complex time zeta).
    Cplx oracle(Cplx zeta, Cplx z) const;

    // z -> c*f(z); the flow oracle becomes F_{c*zeta}.
    Generator scaled(Cplx c) const;
    // z -> f(z+k), k >= 0; the flow oracle becomes F_zeta(z+k) - k.
    Generator shifted(double k) const;

    // Named parameter lookup (A, alpha, a, b); empty for other kinds.
    std::optional<Cplx> param(std::string_view name) const;
    // rho tree of a class_g generator; null otherwise or when rho == 0.
    ExprPtr rho() const { return rho_; }

  private:
    Generator() = default;

    GenKind kind_ = GenKind::Expression;
    std::string text_;
    std::function<Cplx(Cplx)> f_;
    std::function<Cplx(Cplx, Cplx)> oracle_;  // (zeta, z) -> F_zeta(z)
    std::vector<std::pair<std::string, Cplx>> params_;
    ExprPtr rho_;
};

// Parses "affine: A=1+0.5i" | "power: alpha=0.5" | "moebius: a=0, b=1"
// | "classg: alpha=0.5, A=1, rho=1/(z+2)" | "expr: (z+1)/(z+2)".
// Throws ParseError (position + expected tokens) or OutOfRangeParameter.
Generator parse_generator(std::string_view spec);

}  // namespace semiflow
