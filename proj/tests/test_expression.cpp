#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "semiflow/errors.hpp"
#include "semiflow/expression.hpp"

using semiflow::Cplx;
using semiflow::eval_expr;
using semiflow::parse_complex_value;
using semiflow::parse_expression;
using semiflow::to_string;

namespace {
Cplx eval_at(const std::string& text, Cplx z) { return eval_expr(*parse_expression(text), z); }
}  // namespace

TEST_SUITE("expression") {

TEST_CASE("complex literals") {
    std::size_t pos = 0;
    CHECK(parse_complex_value("2", &pos) == Cplx(2.0, 0.0));
    pos = 0;
    CHECK(parse_complex_value("-0.5i", &pos) == Cplx(0.0, -0.5));
    pos = 0;
    CHECK(parse_complex_value("1+0.5i", &pos) == Cplx(1.0, 0.5));
    pos = 0;
    CHECK(parse_complex_value("1-0.5i", &pos) == Cplx(1.0, -0.5));
    pos = 0;
    CHECK(parse_complex_value("0.5i+1", &pos) == Cplx(1.0, 0.5));
}

TEST_CASE("literal rejects doubled component") {
    std::size_t pos = 0;
    CHECK_THROWS_AS(parse_complex_value("1+2", &pos), semiflow::ParseError);
    pos = 0;
    CHECK_THROWS_AS(parse_complex_value("1i+2i", &pos), semiflow::ParseError);
}

TEST_CASE("arithmetic and precedence") {
    const Cplx z(3.0, 0.0);
    CHECK(eval_at("1+2*z", z) == Cplx(7.0, 0.0));
    CHECK(eval_at("(1+2)*z", z) == Cplx(9.0, 0.0));
    CHECK(eval_at("z-2/2", z) == Cplx(2.0, 0.0));
    CHECK(eval_at("-z+1", z) == Cplx(-2.0, 0.0));
}

TEST_CASE("principal branches") {
    const Cplx z(0.0, 2.0);
    CHECK(std::abs(eval_at("sqrt(z)", z) - Cplx(1.0, 1.0)) < 1e-15);
    CHECK(std::abs(eval_at("log(z)", Cplx(0.0, 1.0)) - Cplx(0.0, std::atan(1.0) * 2)) < 1e-15);
    CHECK(std::abs(eval_at("exp(z)", Cplx(0.0, 0.0)) - Cplx(1.0, 0.0)) < 1e-15);
    const Cplx w(2.0, 0.5);
    CHECK(std::abs(eval_at("z^0.5", w) - std::sqrt(w)) < 1e-15);
}

TEST_CASE("round trip through to_string") {
    const std::vector<std::string> exprs = {
        "z",      "(z+1)/(z+2)", "z^0.5",         "1+0.5i*z", "exp(-z)",
        "log(z)", "sqrt(z+1)",   "-(z*z)+3/(z+1)"};
    const std::vector<Cplx> pts = {Cplx(1, 0), Cplx(0.5, 0.7), Cplx(2, -3), Cplx(10, 10)};
    for (const auto& text : exprs) {
        auto ast = parse_expression(text);
        auto back = parse_expression(to_string(*ast));
        for (Cplx z : pts) {
            const Cplx a = eval_expr(*ast, z);
            const Cplx b = eval_expr(*back, z);
            CAPTURE(text);
            CHECK(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("parse errors carry position") {
    try {
        parse_expression("z+*2");
        FAIL("expected a parse error");
    } catch (const semiflow::ParseError& e) {
        CHECK(e.offset == 2);
        CHECK(!e.expected.empty());
    }
    CHECK_THROWS_AS(parse_expression("z+"), semiflow::ParseError);
    CHECK_THROWS_AS(parse_expression("(z"), semiflow::ParseError);
    CHECK_THROWS_AS(parse_expression("z)"), semiflow::ParseError);
    CHECK_THROWS_AS(parse_expression(""), semiflow::ParseError);
}

}  // TEST_SUITE
