#include <doctest.h>

#include <cmath>
#include <complex>

#include "semiflow/envelope.hpp"
#include "semiflow/errors.hpp"
#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

using semiflow::Cplx;
using semiflow::EnvelopeBound;
using semiflow::envelope_bounds;
using semiflow::Generator;
using semiflow::kPi;
using semiflow::parse_generator;
using semiflow::verify_containment;

TEST_SUITE("envelope") {

TEST_CASE("constant field gives two coincident straight lines") {
    const Generator g = Generator::affine(std::polar(1.0, kPi / 6.0));
    const Cplx z0(1.0, 0.5);
    const EnvelopeBound b = envelope_bounds(g, z0, 11.0, 21, 16, 17);
    const double slope = std::tan(kPi / 6.0);
    for (std::size_t i = 0; i < b.u.size(); ++i) {
        const double line = 0.5 + (b.u[i] - 1.0) * slope;
        CHECK(b.b1[i] == doctest::Approx(line).epsilon(1e-9));
        CHECK(b.b2[i] == doctest::Approx(line).epsilon(1e-9));
    }
    CHECK(b.widening_bound < 1e-9);
    CHECK(b.upper_at(20.0) == doctest::Approx(0.5 + 19.0 * slope).epsilon(1e-9));
}

TEST_CASE("brackets tighten as the orbit moves right") {
    const Generator g = parse_generator("moebius: a=1, b=3");
    const EnvelopeBound b = envelope_bounds(g, Cplx(1.0, 0.0), 30.0, 24, 24, 25);
    for (std::size_t i = 1; i < b.angle_hi.size(); ++i) {
        CHECK(b.angle_hi[i] <= b.angle_hi[i - 1] + 1e-12);
        CHECK(b.angle_lo[i] >= b.angle_lo[i - 1] - 1e-12);
    }
    CHECK(b.widening_bound >= 0.0);
}

TEST_CASE("orbits stay inside their envelopes") {
    for (const char* spec : {"power: alpha=0.5", "moebius: a=1, b=3", "affine: A=1+0.5i"}) {
        CAPTURE(spec);
        const Generator g = parse_generator(spec);
        const Cplx z0(1.0, 1.0);
        const auto tr = semiflow::trajectory(g, z0, 12.0, 60);
        const double u_max = tr.samples.back().z.real() + 1.0;
        const EnvelopeBound b = envelope_bounds(g, z0, u_max, 40, 24, 25);
        const auto rep = verify_containment(b, tr);
        CHECK(rep.ok);
        CHECK(rep.samples_checked == 60);
    }
}

TEST_CASE("a displaced orbit is flagged with its worst excursion") {
    const Generator g = Generator::affine(Cplx(1.0, 0.0));
    const EnvelopeBound b = envelope_bounds(g, Cplx(1.0, 0.0), 10.0, 11, 16, 17);
    semiflow::Trajectory fake;
    fake.z0 = Cplx(1.0, 1.0);
    fake.samples = {{0.0, Cplx(1.0, 1.0)}, {1.0, Cplx(2.0, 0.25)}};
    const auto rep = verify_containment(b, fake);
    CHECK(!rep.ok);
    CHECK(rep.worst_above == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.argworst == Cplx(1.0, 1.0));
}

TEST_CASE("interpolation rejects abscissas left of the start") {
    const EnvelopeBound b =
        envelope_bounds(Generator::affine(Cplx(1.0, 0.0)), Cplx(2.0, 0.0), 6.0, 5, 16, 17);
    CHECK_THROWS_AS(b.lower_at(1.0), semiflow::PreconditionFailed);
    CHECK(b.lower_at(2.0) == doctest::Approx(0.0));
}

TEST_CASE("construction guards its parameters") {
    const Generator g = Generator::affine(Cplx(1.0, 0.0));
    CHECK_THROWS_AS(envelope_bounds(g, Cplx(-1.0, 0.0), 5.0, 5, 16, 17), semiflow::DomainError);
    CHECK_THROWS_AS(envelope_bounds(g, Cplx(1.0, 0.0), 5.0, 1, 16, 17),
                    semiflow::PreconditionFailed);
    CHECK_THROWS_AS(envelope_bounds(g, Cplx(1.0, 0.0), 0.5, 5, 16, 17),
                    semiflow::PreconditionFailed);
    // A field with arg reaching +-pi/2 carries no slope information.
    CHECK_THROWS_AS(envelope_bounds(parse_generator("expr: 1i"), Cplx(1.0, 0.0), 5.0, 5, 16, 17),
                    semiflow::DegenerateEnvelope);
}

TEST_CASE("rightward shift needed for a prescribed aperture") {
    const double a = 1.0, b = 3.0;
    auto gamma = [&](double x) { return std::atan((b - a) / (2.0 * std::sqrt((x + a) * (x + b)))); };
    for (double eps : {0.05, 0.1, 0.3}) {
        const double k = semiflow::moebius_sector_threshold(a, b, eps);
        CAPTURE(eps);
        const double expect = std::max(0.0, (b - a - (a + b) * std::sin(eps)) / (2.0 * std::sin(eps)));
        CHECK(k == doctest::Approx(expect).epsilon(1e-12));
        if (k > 0.0) CHECK(gamma(k) <= eps + 1e-9);
    }
    CHECK(semiflow::moebius_sector_threshold(1.0, 3.0, 1.0) == 0.0);
    CHECK_THROWS_AS(semiflow::moebius_sector_threshold(3.0, 1.0, 0.1),
                    semiflow::PreconditionFailed);
    CHECK_THROWS_AS(semiflow::moebius_sector_threshold(1.0, 3.0, 2.0),
                    semiflow::PreconditionFailed);
}

TEST_CASE("csv rendering walks the knots") {
    const EnvelopeBound b =
        envelope_bounds(Generator::affine(Cplx(1.0, 0.0)), Cplx(1.0, 0.0), 3.0, 3, 16, 17);
    CHECK(semiflow::envelope_csv(b) == "u,B1,B2\n1,0,0\n2,0,0\n3,0,0\n");
}

}  // TEST_SUITE
