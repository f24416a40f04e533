#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "needlecast/lattice.hpp"

namespace needlecast {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    std::int64_t evals = 0;
};

/// Thrown when an adaptive rule exhausts its evaluation budget before
/// reaching the requested tolerance; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, QuadResult best)
        : std::runtime_error(msg), best_(best) {}
    const QuadResult& best() const noexcept { return best_; }

private:
    QuadResult best_;
};

inline constexpr std::int64_t kDefaultQuadBudget = 10'000'000;

/// Globally adaptive Gauss-Kronrod (G7/K15) on [lo, hi] to absolute
/// tolerance abs_tol. Bisects the interval with the worst error estimate
/// until the summed estimate is below abs_tol or the budget runs out.
QuadResult integrate_1d(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol,
                        std::int64_t max_evals = kDefaultQuadBudget);

/// Integral of f over one subregion of the fundamental subset F, to absolute
/// tolerance tol (tol >= 1e-13). Rectangular regions use nested adaptive
/// Gauss-Kronrod; F4/F5 substitute x = sin(t) in the outer integral so the
/// curved boundary sqrt(1-x^2) = cos(t) stays smooth. The integrand receives
/// centers tagged with the target region.
QuadResult integrate_region(const std::function<double(const ClusterCenter&)>& f,
                            Region region, const LatticeParams& lat, double tol,
                            std::int64_t max_evals = kDefaultQuadBudget);

}  // namespace needlecast
