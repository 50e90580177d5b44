#include <doctest.h>

#include <cmath>
#include <complex>

#include "semiflow/errors.hpp"
#include "semiflow/quadrature.hpp"
#include "semiflow/types.hpp"

using semiflow::Cplx;
using semiflow::integrate_interval;
using semiflow::integrate_line;
using semiflow::integrate_segment;
using semiflow::kPi;

TEST_SUITE("quadrature") {

TEST_CASE("interval rule on smooth integrands") {
    auto sine = [](double x) { return Cplx(std::sin(x), 0.0); };
    const auto r1 = integrate_interval(sine, 0.0, kPi, 1e-12, 1e-12, 2000);
    CHECK(std::abs(r1.value - 2.0) < 1e-12);

    auto cube = [](double x) { return Cplx(x * x * x, std::cos(x)); };
    const auto r2 = integrate_interval(cube, 0.0, 1.0, 1e-13, 1e-13, 2000);
    CHECK(std::abs(r2.value.real() - 0.25) < 1e-13);
    CHECK(std::abs(r2.value.imag() - std::sin(1.0)) < 1e-13);
}

TEST_CASE("interval rule reports panel exhaustion") {
    auto spike = [](double x) { return Cplx(1.0 / std::sqrt(std::abs(x - 0.3) + 1e-14), 0.0); };
    CHECK_THROWS_AS(integrate_interval(spike, 0.0, 1.0, 1e-14, 1e-14, 8),
                    semiflow::QuadratureFailure);
}

TEST_CASE("segment integral of an antiderivative") {
    auto one = [](Cplx) { return Cplx(1.0, 0.0); };
    const auto r1 = integrate_segment(one, Cplx(1, 0), Cplx(2, 1), 1e-13, 1e-13, 2000);
    CHECK(std::abs(r1.value - Cplx(1, 1)) < 1e-13);

    // 1/w has antiderivative log on any segment inside the right half-plane.
    auto inv = [](Cplx w) { return 1.0 / w; };
    for (const Cplx z : {Cplx(2, 0), Cplx(0.5, 0.5), Cplx(3, -4), Cplx(0.01, 1.0)}) {
        const auto r = integrate_segment(inv, Cplx(1, 0), z, 1e-12, 1e-12, 4000);
        CHECK(std::abs(r.value - std::log(z)) < 1e-11 * (1.0 + std::abs(std::log(z))));
    }
}

TEST_CASE("line integral of even rational kernels") {
    auto cauchy = [](double y) { return Cplx(1.0 / (1.0 + y * y), 0.0); };
    const auto r1 = integrate_line(cauchy, 1e-12, 1e-12, 0.0, 20000);
    CHECK(std::abs(r1.value - kPi) < 1e-9);

    auto square = [](double y) { double d = 1.0 + y * y; return Cplx(1.0 / (d * d), 0.0); };
    const auto r2 = integrate_line(square, 1e-12, 1e-12, 0.0, 20000);
    CHECK(std::abs(r2.value - kPi / 2.0) < 1e-10);
}

TEST_CASE("line integral with an explicit cut corrects the tail") {
    auto cauchy = [](double y) { return Cplx(1.0 / (1.0 + y * y), 0.0); };
    const auto r = integrate_line(cauchy, 1e-12, 1e-12, 100.0, 20000);
    CHECK(r.y_cut == 100.0);
    // The 1/y^2 tail model leaves an O(1/Y^3) modelling error.
    CHECK(std::abs(r.value - kPi) < 1e-5);
    CHECK(std::abs(r.value - kPi) > 1e-10);
}

TEST_CASE("heavy tails are refused rather than mis-corrected") {
    auto slow = [](double y) { return Cplx(1.0 / (1.0 + std::pow(std::abs(y), 1.2)), 0.0); };
    CHECK_THROWS_AS(integrate_line(slow, 1e-10, 1e-10, 0.0, 2000000), semiflow::TailTooFat);
}

TEST_CASE("off-center complex kernel") {
    auto f = [](double y) {
        return Cplx(1.0 / (1.0 + (y - 1.0) * (y - 1.0)), 1.0 / (4.0 + y * y));
    };
    const auto r = integrate_line(f, 1e-9, 1e-9, 0.0, 40000);
    CHECK(std::abs(r.value - Cplx(kPi, kPi / 2.0)) < 1e-7);
}

}  // TEST_SUITE
