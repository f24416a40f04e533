#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "needlecast/lattice.hpp"
#include "needlecast/quadrature.hpp"

using namespace needlecast;

namespace {
constexpr double kPi = std::numbers::pi;
// [DERIVED] closed form: the F5 integral of q2 equals 1/(4 pi).
constexpr double kQ2OverF5 = 0.07957747154594766788;
}  // namespace

TEST_CASE("integrate_1d reproduces polynomial integrals to machine precision") {
    // The 15-point Kronrod rule is exact through degree 22, so these values
    // exercise the node/weight constants directly.
    const QuadResult r13 = integrate_1d(
        [](double x) { return std::pow(x, 13); }, 0.0, 1.0, 1e-10);
    CHECK(std::fabs(r13.value - 1.0 / 14.0) < 5e-15);

    const QuadResult r22 = integrate_1d(
        [](double x) { return std::pow(x, 22); }, -1.0, 1.0, 1e-10);
    CHECK(std::fabs(r22.value - 2.0 / 23.0) < 5e-15);
}

TEST_CASE("integrate_1d handles smooth transcendental integrands") {
    const QuadResult r =
        integrate_1d([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    CHECK(std::fabs(r.value - 2.0) < 1e-12);
    CHECK(r.err_est <= 1e-12);
    CHECK(r.evals >= 15);
}

TEST_CASE("integrate_1d resolves an integrable endpoint singularity") {
    // Nodes are interior, so 1/sqrt(x) is never evaluated at 0.
    const QuadResult r = integrate_1d(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
    CHECK(std::fabs(r.value - 2.0) < 1e-8);
}

TEST_CASE("integrate_1d reports budget exhaustion with its best estimate") {
    try {
        integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                     1e-13, 300);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.best().evals <= 300);
        CHECK(e.best().value > 1.5);
        CHECK(e.best().value < 2.1);
        CHECK(e.best().err_est > 0.0);
    }
}

TEST_CASE("integrate_region rejects tolerances below the supported floor") {
    const LatticeParams lat(2.0, 2.0);
    CHECK_THROWS_AS(integrate_region([](const ClusterCenter&) { return 1.0; },
                                     Region::F5, lat, 1e-14),
                    std::invalid_argument);
}

TEST_CASE("region areas for a square lattice with room around the disc") {
    const LatticeParams lat(4.0, 4.0);
    const auto one = [](const ClusterCenter&) { return 1.0; };
    CHECK(std::fabs(integrate_region(one, Region::F1, lat, 1e-12).value - 1.0) <
          1e-11);
    CHECK(std::fabs(integrate_region(one, Region::F2, lat, 1e-12).value - 1.0) <
          1e-11);
    CHECK(std::fabs(integrate_region(one, Region::F3, lat, 1e-12).value - 1.0) <
          1e-11);
    CHECK(std::fabs(integrate_region(one, Region::F4, lat, 1e-12).value -
                    (1.0 - kPi / 4.0)) < 1e-11);
    CHECK(std::fabs(integrate_region(one, Region::F5, lat, 1e-12).value -
                    kPi / 4.0) < 1e-11);
}

TEST_CASE("regions outside the unit square degenerate for the minimal lattice") {
    const LatticeParams lat(2.0, 2.0);
    const auto one = [](const ClusterCenter&) { return 1.0; };
    CHECK(integrate_region(one, Region::F1, lat, 1e-12).value == 0.0);
    CHECK(integrate_region(one, Region::F2, lat, 1e-12).value == 0.0);
    CHECK(integrate_region(one, Region::F3, lat, 1e-12).value == 0.0);
    CHECK(std::fabs(integrate_region(one, Region::F4, lat, 1e-12).value -
                    (1.0 - kPi / 4.0)) < 1e-11);
    CHECK(std::fabs(integrate_region(one, Region::F5, lat, 1e-12).value -
                    kPi / 4.0) < 1e-11);
}

TEST_CASE("double-crossing mass over F5 matches its closed form") {
    const LatticeParams lat(2.0, 2.0);
    const QuadResult r = integrate_region(
        [](const ClusterCenter& c) { return crossing_profile(c).q2; },
        Region::F5, lat, 1e-12);
    CHECK(std::fabs(r.value - kQ2OverF5) < 1e-12);
    CHECK(r.evals > 0);
}

TEST_CASE("F4 and F5 partition the unit square") {
    // Integrating xy over both curved regions must reproduce the square's 1/4.
    const LatticeParams lat(3.0, 5.0);
    const auto f = [](const ClusterCenter& c) { return c.x * c.y; };
    const double part = integrate_region(f, Region::F4, lat, 1e-12).value +
                        integrate_region(f, Region::F5, lat, 1e-12).value;
    CHECK(std::fabs(part - 0.25) < 2e-12);
}

TEST_CASE("F2 and F3 are mirror images on a square lattice") {
    const LatticeParams lat(5.0, 5.0);
    const double over_f2 = integrate_region(
        [](const ClusterCenter& c) { return c.x + 2.0 * c.y; }, Region::F2, lat,
        1e-12).value;
    const double over_f3 = integrate_region(
        [](const ClusterCenter& c) { return c.y + 2.0 * c.x; }, Region::F3, lat,
        1e-12).value;
    CHECK(std::fabs(over_f2 - over_f3) < 1e-11);
}

TEST_CASE("integrate_region enforces its evaluation budget") {
    const LatticeParams lat(4.0, 4.0);
    CHECK_THROWS_AS(
        integrate_region([](const ClusterCenter& c) { return crossing_profile(c).q2; },
                         Region::F5, lat, 1e-13, 100),
        QuadratureError);
}
