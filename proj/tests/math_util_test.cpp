#include "doctest.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "needlecast/math_util.hpp"

using namespace needlecast;

TEST_CASE("log_factorial at small integers") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
    // 20! = 2432902008176640000 is exactly representable as a double.
    CHECK(log_factorial(20) ==
          doctest::Approx(std::log(2432902008176640000.0)).epsilon(1e-15));
}

TEST_CASE("log_factorial is consistent across the table boundary") {
    // log m! - log (m-1)! = log m must hold wherever the values come from.
    // The difference of two values of size ~m log m carries their absolute
    // rounding, so the tolerance scales with the operands.
    for (std::int64_t m : {2, 50, 511, 512, 513, 1024, 5000, 100000}) {
        const double diff = log_factorial(m) - log_factorial(m - 1);
        const double slack = 1e-12 + 1e-15 * log_factorial(m);
        CHECK(std::fabs(diff - std::log(static_cast<double>(m))) < slack);
    }
}

TEST_CASE("chi_square_sf closed forms for two degrees of freedom") {
    // df = 2: sf(x) = exp(-x/2).
    CHECK(chi_square_sf(2.0 * std::log(2.0), 2.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chi_square_sf(2.0 * std::log(10.0), 2.0) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK(chi_square_sf(2.0 * std::log(100.0), 2.0) ==
          doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("chi_square_sf closed form for four degrees of freedom") {
    // df = 4: sf(x) = (1 + x/2) exp(-x/2); at x = 2 this is 2/e.
    CHECK(chi_square_sf(2.0, 4.0) ==
          doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("chi_square_sf boundary behaviour") {
    CHECK(chi_square_sf(0.0, 3.0) == 1.0);
    CHECK(chi_square_sf(-1.0, 3.0) == 1.0);
    CHECK(chi_square_sf(1e4, 2.0) < 1e-300);
}

TEST_CASE("gamma_q endpoints") {
    CHECK(gamma_q(1.5, 0.0) == 1.0);
    // gamma_q(1, x) = exp(-x).
    CHECK(gamma_q(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("parallel_for covers every index exactly once") {
    const std::int64_t count = 10007;
    std::vector<std::atomic<int>> hits(count);
    parallel_for(count, 4, [&](std::int64_t i) { hits[i].fetch_add(1); });
    for (std::int64_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("parallel_for propagates worker exceptions") {
    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::int64_t i) {
                                     if (i == 57) throw std::runtime_error("x");
                                 }),
                    std::runtime_error);
}

TEST_CASE("resolve_threads honours explicit requests and the environment") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(1) == 1);

    setenv("NEEDLECAST_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    unsetenv("NEEDLECAST_THREADS");

    CHECK(resolve_threads(0) >= 1);
}
