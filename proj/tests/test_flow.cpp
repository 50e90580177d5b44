#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>

#include "semiflow/errors.hpp"
#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"

using semiflow::Cplx;
using semiflow::evolve;
using semiflow::FlowParams;
using semiflow::Generator;
using semiflow::parse_generator;

TEST_SUITE("flow") {

TEST_CASE("constant field translates") {
    const Generator g = Generator::affine(Cplx(1.0, 1.0));
    CHECK(std::abs(evolve(g, Cplx(1.0, 0.0), 2.0) - Cplx(3.0, 2.0)) < 1e-10);
}

TEST_CASE("square-root field reaches its closed form") {
    // u' = sqrt(u) integrates to (t/2 + sqrt(u0))^2.
    const Generator g = Generator::power(0.5);
    CHECK(std::abs(evolve(g, Cplx(1.0, 0.0), 1.0) - Cplx(2.25, 0.0)) < 1e-9);
    const Cplx z0(2.0, 1.5);
    const Cplx expect = std::pow(Cplx(1.5, 0.0) + std::sqrt(z0), 2.0);
    CHECK(std::abs(evolve(g, z0, 3.0) - expect) < 1e-8 * (1.0 + std::abs(expect)));
}

TEST_CASE("rational field satisfies its transcendental equation") {
    // u' = (u+a)/(u+b) conserves  u + (b-a) log(u+a) - t.
    const double a = 0.0, b = 1.0;
    const Generator g = Generator::moebius(a, b);
    const Cplx z0(2.0, 0.0);
    const double t = 1.0;
    const Cplx u = evolve(g, z0, t);
    const Cplx lhs = u + (b - a) * std::log(u + a);
    const Cplx rhs = z0 + (b - a) * std::log(z0 + a) + t;
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));

    // Independent Newton solve of the same equation, frozen here.
    Cplx w(2.5, 0.0);
    for (int i = 0; i < 60; ++i) {
        const Cplx r = w + std::log(w) - rhs;
        w -= r * w / (w + 1.0);
    }
    CHECK(std::abs(u - w) < 1e-9);
}

TEST_CASE("integrated flow matches every catalog oracle") {
    std::mt19937_64 rng(20260817u);
    std::uniform_real_distribution<double> re(0.3, 3.0), im(-2.0, 2.0), tm(0.05, 4.0);
    for (const char* spec : {"affine: A=1+0.5i", "power: alpha=0.25", "power: alpha=0.5",
                             "power: alpha=0.75", "moebius: a=0, b=1", "moebius: a=1, b=3"}) {
        const Generator g = parse_generator(spec);
        REQUIRE(g.has_oracle());
        for (int i = 0; i < 8; ++i) {
            const Cplx z0(re(rng), im(rng));
            const double t = tm(rng);
            const Cplx want = g.oracle(Cplx(t, 0.0), z0);
            const Cplx got = evolve(g, z0, t);
            CAPTURE(spec);
            CAPTURE(z0);
            CAPTURE(t);
            CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("time is additive along the flow") {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> re(0.3, 2.5), im(-2.0, 2.0), tm(0.1, 2.0);
    for (const char* spec :
         {"power: alpha=0.5", "moebius: a=1, b=3", "expr: z", "classg: alpha=0.5, A=1"}) {
        const Generator g = parse_generator(spec);
        for (int i = 0; i < 5; ++i) {
            const double gap =
                semiflow::check_semigroup_law(g, Cplx(re(rng), im(rng)), tm(rng), tm(rng));
            CAPTURE(spec);
            CHECK(gap < 1e-8);
        }
    }
}

TEST_CASE("rotated time follows the rotated field") {
    const Generator g = Generator::power(0.5);
    const double theta = 0.5;
    const Cplx z0(1.5, -0.3);
    const double t = 1.2;
    const Cplx via_theta = evolve(g, z0, t, theta);
    const Cplx via_oracle = g.oracle(std::polar(t, theta), z0);
    CHECK(std::abs(via_theta - via_oracle) <= 1e-8 * (1.0 + std::abs(via_oracle)));
}

TEST_CASE("leftward field exits the half-plane at the bisected time") {
    const Generator g = parse_generator("expr: 0-1");
    try {
        evolve(g, Cplx(0.5, 0.0), 2.0);
        FAIL("expected the trajectory to leave the domain");
    } catch (const semiflow::DomainExit& e) {
        CHECK(e.s == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(e.u.real() >= 0.0);
        CHECK(e.u.real() < 1e-6);
    }
}

TEST_CASE("step budget is enforced") {
    FlowParams p;
    p.max_steps = 2;
    CHECK_THROWS_AS(evolve(parse_generator("expr: z"), Cplx(1.0, 0.0), 20.0, 0.0, p),
                    semiflow::StepLimitExceeded);
}

TEST_CASE("zero time is the identity but still checks the domain") {
    const Generator g = Generator::power(0.5);
    CHECK(evolve(g, Cplx(0.7, -0.2), 0.0) == Cplx(0.7, -0.2));
    CHECK_THROWS_AS(evolve(g, Cplx(-1.0, 0.0), 0.0), semiflow::DomainError);
}

TEST_CASE("trajectory samples line up with single evolutions") {
    const Generator g = parse_generator("moebius: a=1, b=3");
    const Cplx z0(1.0, 1.0);
    const auto tr = semiflow::trajectory(g, z0, 2.0, 5);
    REQUIRE(tr.samples.size() == 5);
    CHECK(tr.samples.front().t == 0.0);
    CHECK(tr.samples.front().z == z0);
    CHECK(tr.samples.back().t == 2.0);
    for (const auto& s : tr.samples) {
        const Cplx direct = evolve(g, z0, s.t);
        CHECK(std::abs(s.z - direct) <= 1e-9 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("trajectory csv is exact and round-trippable") {
    // Formatting uses shortest round-trip representations, checked on exact
    // sample values so the assertion does not depend on integrator rounding.
    semiflow::Trajectory exact;
    exact.z0 = Cplx(1.0, 0.0);
    exact.samples = {{0.0, Cplx(1.0, 0.0)}, {1.0, Cplx(2.0, 0.5)}, {2.0, Cplx(3.0, 1.0)}};
    CHECK(semiflow::trajectory_csv(exact) == "t,re,im\n0,1,0\n1,2,0.5\n2,3,1\n");

    // An integrated trajectory emits one row per sample and stays within the
    // integrator tolerance of the closed-form flow when parsed back.
    const Generator g = Generator::affine(Cplx(1.0, 0.5));
    const auto tr = semiflow::trajectory(g, Cplx(1.0, 0.0), 2.0, 3);
    const std::string csv = semiflow::trajectory_csv(tr);
    std::istringstream rows(csv);
    std::string line;
    REQUIRE(std::getline(rows, line));
    CHECK(line == "t,re,im");
    std::size_t count = 0;
    while (std::getline(rows, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream cells(line);
        double t = 0.0, re = 0.0, im = 0.0;
        const bool parsed = static_cast<bool>(cells >> t >> re >> im);
        REQUIRE(parsed);
        const Cplx expect = Cplx(1.0, 0.0) + t * Cplx(1.0, 0.5);
        CHECK(std::abs(Cplx(re, im) - expect) <= 1e-9 * (1.0 + std::abs(expect)));
        ++count;
    }
    CHECK(count == 3);
}

TEST_CASE("shifted flow stays a translate of the original") {
    const Generator g = Generator::power(0.5);
    const Cplx got = semiflow::evolve_shifted(g, 1.0, Cplx(1.0, 0.0), 1.0);
    CHECK(std::abs(got - Cplx(2.6642135623730951, 0.0)) < 1e-9);
    const Cplx direct = evolve(g, Cplx(2.0, 0.0), 1.0) - 1.0;
    CHECK(std::abs(got - direct) < 1e-12);
}

}  // TEST_SUITE
