#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "semiflow/checks.hpp"
#include "semiflow/errors.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

using semiflow::Cplx;
using semiflow::Generator;
using semiflow::kPi;
using semiflow::parse_generator;
using semiflow::SampleGrid;

namespace {
const SampleGrid& small_grid() {
    static const SampleGrid g = SampleGrid::standard(0.0, 24, 25);
    return g;
}
}  // namespace

TEST_SUITE("checks") {

TEST_CASE("flow invariance holds across the catalog") {
    for (const char* spec : {"affine: A=1+0.5i", "power: alpha=0.25", "power: alpha=0.75",
                             "moebius: a=0, b=1", "moebius: a=1, b=3", "expr: z",
                             "classg: alpha=0.5, A=1"}) {
        CAPTURE(spec);
        const auto rep = semiflow::check_flow_invariance(parse_generator(spec), small_grid());
        CHECK(rep.ok());
        CHECK(rep.points_checked == small_grid().size());
    }
}

TEST_CASE("flow invariance rejects a non-generator") {
    const auto rep = semiflow::check_flow_invariance(parse_generator("expr: z*z"), small_grid());
    CHECK(!rep.ok());
    CHECK(rep.max_excess > 1.0);
    CHECK(!rep.violations.empty());
}

TEST_CASE("range check measures the worst real part") {
    const auto ok = semiflow::check_range_halfplane(parse_generator("affine: A=2"), small_grid());
    CHECK(ok.ok());
    CHECK(ok.min_re == 2.0);

    const auto bad = semiflow::check_range_halfplane(parse_generator("expr: 0-1"), small_grid());
    CHECK(!bad.ok());
    CHECK(bad.min_re == -1.0);
    CHECK(bad.violations.size() == small_grid().size());

    const auto edge = semiflow::check_range_halfplane(parse_generator("expr: 1i"), small_grid());
    CHECK(edge.ok());
    CHECK(edge.min_re == 0.0);
}

TEST_CASE("sequence acceleration finds geometric limits") {
    std::vector<Cplx> v;
    const Cplx L(2.0, -1.0);
    for (int k = 0; k < 9; ++k) v.push_back(L + Cplx(0.3, 0.1) * std::pow(0.5, k));
    const auto r = semiflow::accelerate(v, 1e-9);
    CHECK(r.converged);
    CHECK(std::abs(r.limit - L) < 1e-9);

    std::vector<Cplx> diverging;
    for (int k = 0; k < 9; ++k) diverging.push_back(Cplx(std::pow(2.0, k), 0.0));
    CHECK(!semiflow::accelerate(diverging, 1e-9).converged);
}

TEST_CASE("angular derivative along the axis") {
    const auto dilation = semiflow::angular_derivative_at_infinity(parse_generator("expr: z"));
    CHECK(dilation.converged);
    CHECK(dilation.delta == doctest::Approx(1.0).epsilon(1e-9));

    const auto steep = semiflow::angular_derivative_at_infinity(parse_generator("expr: 2*z+1"));
    CHECK(steep.converged);
    CHECK(steep.delta == doctest::Approx(2.0).epsilon(1e-9));

    for (const char* spec : {"affine: A=1", "power: alpha=0.5", "moebius: a=1, b=3"}) {
        CAPTURE(spec);
        const auto flat = semiflow::angular_derivative_at_infinity(parse_generator(spec));
        CHECK(flat.converged);
        CHECK(std::abs(flat.delta) < 1e-8);
    }
}

TEST_CASE("type classification") {
    CHECK(semiflow::classify_type(parse_generator("expr: z")) ==
          semiflow::SemigroupType::Hyperbolic);
    CHECK(semiflow::classify_type(parse_generator("expr: 0.5*z+1i")) ==
          semiflow::SemigroupType::Hyperbolic);
    for (const char* spec : {"affine: A=1+0.5i", "power: alpha=0.5", "moebius: a=0, b=1"})
        CHECK(semiflow::classify_type(parse_generator(spec)) == semiflow::SemigroupType::Parabolic);
    CHECK_THROWS_AS(semiflow::classify_type(parse_generator("expr: z*z")),
                    semiflow::NotConverged);
}

TEST_CASE("argument envelope of a constant field is exact") {
    const Generator g = Generator::affine(std::polar(1.0, kPi / 6.0));
    const auto env = semiflow::arg_envelope(g, 0.0, small_grid());
    CHECK(env.lo == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(env.hi == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(env.gamma1 == 0.0);
    CHECK(env.gamma2 == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(!env.degenerate);
}

TEST_CASE("argument envelope narrows as the half-plane shrinks") {
    const Generator g = parse_generator("moebius: a=1, b=3");
    const auto wide = semiflow::arg_envelope(g, 0.0, SampleGrid::standard(0.0, 24, 25));
    const auto narrow = semiflow::arg_envelope(g, 5.0, SampleGrid::standard(5.0, 24, 25));
    CHECK(narrow.hi < wide.hi);
    CHECK(narrow.lo > wide.lo);
    CHECK(narrow.hi > 0.0);  // the slope bracket stays two-sided
    CHECK(narrow.lo < 0.0);
}

TEST_CASE("sector of a power field matches its homogeneity") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        CAPTURE(alpha);
        const auto sec = semiflow::sector_of_analyticity(Generator::power(alpha), small_grid());
        REQUIRE(sec.has_value());
        CHECK(sec->outer_estimate);
        CHECK(sec->theta1 == doctest::Approx(kPi * alpha / 2.0).epsilon(1e-2));
        CHECK(sec->theta2 == doctest::Approx(kPi * alpha / 2.0).epsilon(1e-2));
    }
}

TEST_CASE("sector of a rotated constant field is lopsided") {
    const auto sec = semiflow::sector_of_analyticity(Generator::affine(std::polar(1.0, kPi / 6.0)),
                                                     small_grid());
    REQUIRE(sec.has_value());
    CHECK(sec->theta1 == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
    CHECK(sec->theta2 == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(sec->contains(std::polar(1.0, 0.5)));
    CHECK(!sec->contains(std::polar(1.0, 1.5)));
}

TEST_CASE("dilation field admits no open sector") {
    CHECK(!semiflow::sector_of_analyticity(parse_generator("expr: z"), small_grid()).has_value());
}

TEST_CASE("power-tail sector narrows with the rotation of its coefficient") {
    const Generator straight = parse_generator("classg: alpha=1, A=1");
    const auto s0 = semiflow::class_g_sector(straight, 0.0, small_grid());
    CHECK(s0.sector.theta1 == doctest::Approx(kPi / 2.0).epsilon(1e-6));
    CHECK(s0.sector.theta2 == doctest::Approx(kPi / 2.0).epsilon(1e-6));

    const Generator turned = parse_generator("classg: alpha=1, A=0.5+0.5i");
    const auto s1 = semiflow::class_g_sector(turned, 0.0, small_grid());
    CHECK(s1.sector.theta1 == doctest::Approx(kPi / 2.0 + kPi / 4.0).epsilon(1e-6));
    CHECK(s1.sector.theta2 == doctest::Approx(kPi / 2.0 - kPi / 4.0).epsilon(1e-6));

    const Generator tail = parse_generator("classg: alpha=0.5, A=1, rho=1/(z+2)");
    const auto s2 = semiflow::class_g_sector(tail, 2.0, SampleGrid::standard(2.0, 24, 25));
    CHECK(s2.sector.theta1 <= kPi / 4.0 + 1e-9);
    CHECK(s2.sector.theta1 > 0.0);
    CHECK(s2.delta1 >= 0.0);
    CHECK(s2.delta2 >= 0.0);
}

}  // TEST_SUITE
