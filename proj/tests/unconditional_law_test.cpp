#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "needlecast/unconditional_law.hpp"

using namespace needlecast;

namespace {
constexpr double kPi = std::numbers::pi;
// [DERIVED] single-needle law on the unit-square lattice (a = b = 2):
//   p(2) = 1/(4 pi), p(1) = 3/(2 pi), p(0) = 1 - 7/(4 pi).
constexpr double kP2 = 0.07957747154594766788;
constexpr double kP1 = 0.47746482927568600731;
constexpr double kP0 = 0.44295769917836632481;
}  // namespace

TEST_CASE("single-needle pmf on the minimal square lattice") {
    const IntersectionPmf p = pmf(ClusterSpec(1), LatticeParams(2.0, 2.0), 1e-10);
    REQUIRE(p.probs.size() == 3);
    CHECK(std::fabs(p.probs[0] - kP0) < 1e-9);
    CHECK(std::fabs(p.probs[1] - kP1) < 1e-9);
    CHECK(std::fabs(p.probs[2] - kP2) < 1e-9);
    CHECK(p.evals > 0);
    CHECK(p.tol == 1e-10);
    CHECK(p.n == 1);
}

TEST_CASE("atom dominates the zero entry when cells dwarf the needle") {
    // (1 - 2 lambda)(1 - 2 mu) = 1/4 for a = b = 4; quadrature adds more.
    const IntersectionPmf p = pmf(ClusterSpec(2), LatticeParams(4.0, 4.0), 1e-9);
    CHECK(p.probs[0] > 0.25);
    CHECK(p.probs[0] < 1.0);
}

TEST_CASE("pmf entries are nonnegative and sum to one within the contract") {
    for (const LatticeParams lat : {LatticeParams(2.0, 2.0), LatticeParams(3.0, 5.0)}) {
        for (std::int64_t n : {1, 2, 5}) {
            const double tol = 1e-8;
            const IntersectionPmf p = pmf(ClusterSpec(n), lat, tol);
            double sum = 0.0;
            for (double q : p.probs) {
                CHECK(q >= 0.0);
                sum += q;
            }
            CHECK(std::fabs(sum - 1.0) <=
                  10.0 * static_cast<double>(2 * n + 1) * tol);
        }
    }
}

TEST_CASE("swapping the edge lengths leaves the law unchanged") {
    const double tol = 1e-9;
    const IntersectionPmf p24 = pmf(ClusterSpec(3), LatticeParams(2.0, 4.0), tol);
    const IntersectionPmf p42 = pmf(ClusterSpec(3), LatticeParams(4.0, 2.0), tol);
    for (std::size_t i = 0; i < p24.probs.size(); ++i) {
        CHECK(std::fabs(p24.probs[i] - p42.probs[i]) < 10.0 * tol);
    }
}

TEST_CASE("pmf_entry computes exactly the pmf's entries") {
    const ClusterSpec spec(2);
    const LatticeParams lat(2.0, 2.0);
    const double tol = 1e-8;
    const IntersectionPmf p = pmf(spec, lat, tol);
    for (std::int64_t i = 0; i <= 4; ++i) {
        CHECK(pmf_entry(spec, lat, i, tol) ==
              p.probs[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("pmf respects the needle-count cap") {
    CHECK_THROWS_AS(pmf(ClusterSpec(2001), LatticeParams(2.0, 2.0), 1e-6),
                    std::length_error);
    CHECK_THROWS_AS(pmf(ClusterSpec(6), LatticeParams(2.0, 2.0), 1e-6, 0, 5),
                    std::length_error);
}

TEST_CASE("cdf conventions: right-continuous step function of floor(nx)") {
    const FiniteCdf F = cdf(ClusterSpec(1), LatticeParams(2.0, 2.0), 1e-9);
    REQUIRE(F.cumulative.size() == 3);

    CHECK(F(-0.1) == 0.0);
    CHECK(F(0.0) == F.value_at(0));
    CHECK(F(0.6) == F.value_at(0));   // floor(0.6) = 0
    CHECK(F(1.0) == F.value_at(1));
    CHECK(F(1.999) == F.value_at(1));
    CHECK(F(2.0) == 1.0);
    CHECK(F(5.0) == 1.0);

    CHECK(F.left_limit_at(0) == 0.0);
    CHECK(F.left_limit_at(1) == F.value_at(0));
    CHECK(F.left_limit_at(2) == F.value_at(1));
    CHECK(F.value_at(2) == doctest::Approx(1.0).epsilon(1e-8));

    CHECK(std::fabs(F.value_at(0) - kP0) < 1e-8);
}

TEST_CASE("cdf_from_pmf accumulates the entries in order") {
    const IntersectionPmf p = pmf(ClusterSpec(2), LatticeParams(3.0, 5.0), 1e-9);
    const FiniteCdf F = cdf_from_pmf(p);
    REQUIRE(F.cumulative.size() == p.probs.size());
    double run = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        run += p.probs[i];
        CHECK(F.cumulative[i] == doctest::Approx(run).epsilon(1e-14));
    }
    CHECK(F.n == p.n);
    CHECK(F.evals == p.evals);
}

TEST_CASE("moments from quadrature match moments of the pmf") {
    const ClusterSpec spec(3);
    const LatticeParams lat(2.0, 4.0);
    const IntersectionPmf p = pmf(spec, lat, 1e-9);
    for (int k = 1; k <= 4; ++k) {
        double from_pmf = 0.0;
        double bound = 1e-9;  // the direct moment's own tolerance
        for (std::size_t i = 1; i < p.probs.size(); ++i) {
            const double w = std::pow(static_cast<double>(i) / 3.0, k);
            from_pmf += w * p.probs[i];
            bound += w * p.tol;  // worst-case per-entry quadrature error
        }
        CHECK(std::fabs(moment(spec, lat, k, 1e-9) - from_pmf) < bound);
    }
}

TEST_CASE("zeroth moment is exactly one and the mean is n-free") {
    const LatticeParams lat(2.0, 2.0);
    CHECK(moment(ClusterSpec(5), lat, 0, 1e-9) == 1.0);
    for (std::int64_t n : {1, 4, 9}) {
        CHECK(std::fabs(moment(ClusterSpec(n), lat, 1, 1e-9) - 2.0 / kPi) <
              1e-8);
    }
}

TEST_CASE("sum check precedes clipping") {
    // A generous tolerance may clip small negative entries to zero, but only
    // after the raw sum passed the normalization check; the result must stay
    // a probability vector.
    const IntersectionPmf p = pmf(ClusterSpec(4), LatticeParams(2.0, 2.0), 1e-6);
    for (double q : p.probs) {
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
    }
}
