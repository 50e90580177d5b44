#include <doctest.h>

#include <cmath>
#include <complex>

#include "semiflow/errors.hpp"
#include "semiflow/generator.hpp"

using semiflow::Cplx;
using semiflow::GenKind;
using semiflow::Generator;
using semiflow::parse_generator;

TEST_SUITE("generator") {

TEST_CASE("catalog parsing and parameters") {
    const Generator aff = parse_generator("affine: A=1+0.5i");
    CHECK(aff.kind() == GenKind::Affine);
    CHECK(*aff.param("A") == Cplx(1.0, 0.5));
    CHECK(aff(Cplx(3.0, -2.0)) == Cplx(1.0, 0.5));

    const Generator pow = parse_generator("power: alpha=0.25");
    CHECK(pow.kind() == GenKind::Power);
    CHECK(pow.param("alpha")->real() == 0.25);
    CHECK(std::abs(pow(Cplx(16.0, 0.0)) - std::pow(16.0, 0.75)) < 1e-12);

    const Generator moe = parse_generator("moebius: a=1, b=3");
    CHECK(moe.kind() == GenKind::Moebius);
    CHECK(std::abs(moe(Cplx(1.0, 0.0)) - Cplx(0.5, 0.0)) < 1e-15);

    const Generator cg = parse_generator("classg: alpha=0.5, A=1, rho=1/(z+2)");
    CHECK(cg.kind() == GenKind::ClassG);
    const Cplx expect = std::sqrt(Cplx(3.0, 0.0)) + Cplx(0.25, 0.0);
    CHECK(std::abs(cg(Cplx(2.0, 0.0)) - expect) < 1e-14);

    const Generator ex = parse_generator("expr: (z+1)/(z+2)");
    CHECK(ex.kind() == GenKind::Expression);
    CHECK(!ex.has_oracle());
    CHECK(!ex.param("a").has_value());
}

TEST_CASE("canonical text reparses to the same function") {
    for (const char* spec : {"affine: A=1+0.5i", "power: alpha=0.75", "moebius: a=0, b=1",
                             "classg: alpha=1.5, A=0.5i, rho=0", "expr: z^0.5+1"}) {
        const Generator g = parse_generator(spec);
        const Generator h = parse_generator(g.text());
        for (Cplx z : {Cplx(1, 0), Cplx(0.3, 0.8), Cplx(5, -4)})
            CHECK(std::abs(g(z) - h(z)) <= 1e-14 * (1.0 + std::abs(g(z))));
    }
}

TEST_CASE("parameter range enforcement") {
    CHECK_THROWS_AS(parse_generator("power: alpha=0"), semiflow::OutOfRangeParameter);
    CHECK_THROWS_AS(parse_generator("power: alpha=1"), semiflow::OutOfRangeParameter);
    CHECK_THROWS_AS(parse_generator("moebius: a=-1, b=1"), semiflow::OutOfRangeParameter);
    CHECK_THROWS_AS(parse_generator("moebius: a=2, b=2"), semiflow::OutOfRangeParameter);
    CHECK_THROWS_AS(parse_generator("classg: alpha=2, A=1"), semiflow::OutOfRangeParameter);
    CHECK_THROWS_AS(parse_generator("nope: A=1"), semiflow::ParseError);
    CHECK_THROWS_AS(parse_generator("power: beta=0.5"), semiflow::ParseError);
}

TEST_CASE("checked evaluation guards the domain") {
    const Generator g = parse_generator("expr: z");
    CHECK_THROWS_AS(g(Cplx(0.0, 1.0)), semiflow::DomainError);
    CHECK_THROWS_AS(g(Cplx(-1.0, 0.0)), semiflow::DomainError);
    const Generator blow = parse_generator("expr: 1/(z-1)");
    CHECK_THROWS_AS(blow(Cplx(1.0, 0.0)), semiflow::NumericOverflow);
}

TEST_CASE("affine flow oracle is a translation") {
    const Cplx A(0.7, 0.4);
    const Generator g = Generator::affine(A);
    REQUIRE(g.has_oracle());
    const Cplx z0(2.0, -1.0), zeta(1.5, 0.25);
    CHECK(std::abs(g.oracle(zeta, z0) - (z0 + A * zeta)) < 1e-15);
}

TEST_CASE("power flow oracle satisfies the group law") {
    const Generator g = Generator::power(0.5);
    const Cplx z0(1.2, 0.4);
    CHECK(std::abs(g.oracle(Cplx(0.0, 0.0), z0) - z0) < 1e-14);
    const Cplx s(0.3, 0.1), t(0.9, -0.2);
    const Cplx two_leg = g.oracle(t, g.oracle(s, z0));
    const Cplx direct = g.oracle(s + t, z0);
    CHECK(std::abs(two_leg - direct) < 1e-12 * (1.0 + std::abs(direct)));
}

TEST_CASE("rational flow oracle satisfies its defining relation") {
    const double a = 1.0, b = 3.0, d = b - a;
    const Generator g = Generator::moebius(a, b);
    const Cplx z0(2.0, 1.0);
    for (const Cplx zeta : {Cplx(0.5, 0.0), Cplx(2.0, 0.0), Cplx(1.0, 0.3)}) {
        const Cplx F = g.oracle(zeta, z0);
        const Cplx lhs = F + d * std::log(F + a);
        const Cplx rhs = z0 + d * std::log(z0 + a) + zeta;
        CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("scaling rotates flow time") {
    const Generator g = Generator::power(0.5);
    const Cplx c = std::polar(1.0, 0.4);
    const Generator gc = g.scaled(c);
    const Cplx z0(1.5, 0.2), zeta(0.8, 0.0);
    CHECK(std::abs(gc(z0) - c * g(z0)) < 1e-15);
    CHECK(std::abs(gc.oracle(zeta, z0) - g.oracle(c * zeta, z0)) < 1e-13);
}

TEST_CASE("shifting conjugates the flow by a translation") {
    const Generator g = Generator::power(0.5);
    const Generator gk = g.shifted(2.0);
    const Cplx z0(1.0, 0.5), zeta(0.7, 0.0);
    CHECK(std::abs(gk(z0) - g(z0 + 2.0)) < 1e-15);
    CHECK(std::abs(gk.oracle(zeta, z0) - (g.oracle(zeta, z0 + 2.0) - 2.0)) < 1e-13);
}

}  // TEST_SUITE
