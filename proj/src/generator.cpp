#include "semiflow/generator.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <utility>

namespace semiflow {

namespace {

std::string describe(Cplx z) { return format_complex(z); }

// Solves w + d*log(w+a) = rhs for w by damped Newton; the unique solution in
// the right half-plane continues the flow of (z+a)/(z+b), d = b-a.
Cplx solve_log_equation(double a, double d, Cplx rhs, Cplx w0) {
    auto H = [&](Cplx w) { return w + d * std::log(w + a); };
    Cplx w = w0;
    Cplx r = H(w) - rhs;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(r) <= 1e-14 * (1.0 + std::abs(rhs))) return w;
        Cplx step = -r * (w + a) / (w + a + d);  // dH/dw = (w+a+d)/(w+a)
        double lam = 1.0;
        for (;;) {
            Cplx wn = w + lam * step;
            if (wn.real() > 0.0) {
                Cplx rn = H(wn) - rhs;
                if (std::abs(rn) < std::abs(r)) {
                    w = wn;
                    r = rn;
                    break;
                }
            }
            lam *= 0.5;
            if (lam < 1e-14) throw NotConverged("closed-form flow: Newton stalled");
        }
    }
    throw NotConverged("closed-form flow: Newton did not converge");
}

}  // namespace

Cplx Generator::operator()(Cplx z) const {
    if (!(z.real() > 0.0))
        throw DomainError("generator evaluated outside the right half-plane at z = " + describe(z));
    Cplx v = f_(z);
    if (!is_finite(v)) throw NumericOverflow("generator value not finite at z = " + describe(z));
    return v;
}

Cplx Generator::oracle(Cplx zeta, Cplx z) const {
    if (!oracle_) throw PreconditionFailed("generator has no closed-form flow");
    return oracle_(zeta, z);
}

std::optional<Cplx> Generator::param(std::string_view name) const {
    for (const auto& [n, v] : params_)
        if (n == name) return v;
    return std::nullopt;
}

Generator Generator::affine(Cplx A) {
    Generator g;
    g.kind_ = GenKind::Affine;
    g.text_ = "affine: A=" + format_complex(A);
    g.f_ = [A](Cplx) { return A; };
    g.oracle_ = [A](Cplx zeta, Cplx z) { return z + A * zeta; };
    g.params_ = {{"A", A}};
    return g;
}

Generator Generator::power(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw OutOfRangeParameter("power generator needs alpha in (0,1), got " + format_double(alpha));
    Generator g;
    g.kind_ = GenKind::Power;
    g.text_ = "power: alpha=" + format_double(alpha);
    g.f_ = [alpha](Cplx z) { return std::pow(z, 1.0 - alpha); };
    g.oracle_ = [alpha](Cplx zeta, Cplx z) {
        return std::pow(alpha * zeta + std::pow(z, alpha), 1.0 / alpha);
    };
    g.params_ = {{"alpha", alpha}};
    return g;
}

Generator Generator::moebius(double a, double b) {
    if (!(a >= 0.0 && a < b))
        throw OutOfRangeParameter("moebius generator needs 0 <= a < b, got a=" + format_double(a) +
                                  ", b=" + format_double(b));
    Generator g;
    g.kind_ = GenKind::Moebius;
    g.text_ = "moebius: a=" + format_double(a) + ", b=" + format_double(b);
    g.f_ = [a, b](Cplx z) { return (z + a) / (z + b); };
    const double d = b - a;
    g.oracle_ = [a, d](Cplx zeta, Cplx z) {
        Cplx rhs = z + d * std::log(z + a) + zeta;
        return solve_log_equation(a, d, rhs, z);
    };
    g.params_ = {{"a", a}, {"b", b}};
    return g;
}

Generator Generator::class_g(double alpha, Cplx A, ExprPtr rho) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw OutOfRangeParameter("class-g generator needs alpha in (0,2), got " + format_double(alpha));
    Generator g;
    g.kind_ = GenKind::ClassG;
    g.text_ = "classg: alpha=" + format_double(alpha) + ", A=" + format_complex(A);
    if (rho) g.text_ += ", rho=" + to_string(*rho);
    const double e = 1.0 - alpha;
    if (rho)
        g.f_ = [A, e, rho](Cplx z) { return A * std::pow(z + 1.0, e) + eval_expr(*rho, z); };
    else
        g.f_ = [A, e](Cplx z) { return A * std::pow(z + 1.0, e); };
    g.params_ = {{"alpha", alpha}, {"A", A}};
    g.rho_ = std::move(rho);
    return g;
}

Generator Generator::expression(ExprPtr ast) {
    if (!ast) throw PreconditionFailed("expression generator needs a tree");
    Generator g;
    g.kind_ = GenKind::Expression;
    g.text_ = "expr: " + to_string(*ast);
    g.f_ = [ast](Cplx z) { return eval_expr(*ast, z); };
    return g;
}

Generator Generator::scaled(Cplx c) const {
    Generator g;
    g.kind_ = GenKind::Expression;
    g.text_ = "expr: (" + format_complex(c) + ")*(f) where f is " + text_;
    auto f = f_;
    g.f_ = [c, f](Cplx z) { return c * f(z); };
    if (oracle_) {
        auto orc = oracle_;
        g.oracle_ = [c, orc](Cplx zeta, Cplx z) { return orc(c * zeta, z); };
    }
    return g;
}

Generator Generator::shifted(double k) const {
    if (!(k >= 0.0)) throw OutOfRangeParameter("shift distance must be >= 0");
    Generator g;
    g.kind_ = GenKind::Expression;
    g.text_ = "expr: f(z+" + format_double(k) + ") where f is " + text_;
    auto f = f_;
    g.f_ = [k, f](Cplx z) { return f(z + k); };
    if (oracle_) {
        auto orc = oracle_;
        g.oracle_ = [k, orc](Cplx zeta, Cplx z) { return orc(zeta, z + k) - k; };
    }
    return g;
}

namespace {

struct ParamScanner {
    std::string_view text;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
        std::size_t off = pos;
        if (off >= text.size() && !text.empty()) off = text.size() - 1;
        throw ParseError(what + " at offset " + std::to_string(off), off, std::move(expected));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a name", {"name"});
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c, const char* token) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + token + "'", {token});
        ++pos;
    }
};

double require_real(const std::string& name, Cplx v) {
    if (v.imag() != 0.0)
        throw OutOfRangeParameter("parameter '" + name + "' must be real, got " + format_complex(v));
    return v.real();
}

}  // namespace

Generator parse_generator(std::string_view spec) {
    ParamScanner s{spec, 0};
    if (s.at_end()) s.fail("empty generator spec", {"affine", "power", "moebius", "classg", "expr"});
    std::string kind = s.ident();
    if (kind != "affine" && kind != "power" && kind != "moebius" && kind != "classg" && kind != "expr") {
        s.pos -= kind.size();
        s.fail("unknown generator kind '" + kind + "'", {"affine", "power", "moebius", "classg", "expr"});
    }
    s.expect(':', ":");

    if (kind == "expr") return Generator::expression(parse_expression(spec, s.pos));

    std::map<std::string, Cplx> values;
    ExprPtr rho;
    const std::vector<std::string> known =
        kind == "affine"    ? std::vector<std::string>{"A"}
        : kind == "power"   ? std::vector<std::string>{"alpha"}
        : kind == "moebius" ? std::vector<std::string>{"a", "b"}
                            : std::vector<std::string>{"alpha", "A", "rho"};
    for (;;) {
        if (s.at_end()) s.fail("expected a parameter", known);
        std::size_t name_at = s.pos;
        std::string name = s.ident();
        bool ok = false;
        for (const auto& k : known) ok = ok || k == name;
        if (!ok) {
            s.pos = name_at;
            s.fail("unknown parameter '" + name + "' for kind '" + kind + "'", known);
        }
        if (values.count(name) || (name == "rho" && rho)) {
            s.pos = name_at;
            s.fail("duplicate parameter '" + name + "'", {","});
        }
        s.expect('=', "=");
        if (name == "rho") {
            // rho's value is a full expression; it cannot contain a comma, so
            // it extends to the next separator or to the end of the spec.
            s.skip_ws();
            std::size_t stop = spec.find(',', s.pos);
            if (stop == std::string_view::npos) stop = spec.size();
            rho = parse_expression(spec.substr(0, stop), s.pos);
            s.pos = stop;
        } else {
            s.skip_ws();
            values[name] = parse_complex_value(spec, &s.pos);
        }
        if (s.at_end()) break;
        s.expect(',', ",");
    }

    auto need = [&](const std::string& name) -> Cplx {
        auto it = values.find(name);
        if (it == values.end())
            throw ParseError("missing parameter '" + name + "' for kind '" + kind + "'",
                             spec.empty() ? 0 : spec.size() - 1, {name + "="});
        return it->second;
    };

    if (kind == "affine") return Generator::affine(need("A"));
    if (kind == "power") return Generator::power(require_real("alpha", need("alpha")));
    if (kind == "moebius")
        return Generator::moebius(require_real("a", need("a")), require_real("b", need("b")));
    return Generator::class_g(require_real("alpha", need("alpha")), need("A"), rho);
}

}  // namespace semiflow
