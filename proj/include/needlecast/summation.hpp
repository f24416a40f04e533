#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace needlecast {

/// Neumaier-compensated accumulator. Adding terms of wildly different
/// magnitude loses at most one rounding of the running compensation,
/// instead of one per term.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise (cascade) sum over a span; order-independent given the same
/// element order, error growth O(log n) instead of O(n).
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 8) {
        CompensatedSum acc;
        for (double x : xs) acc.add(x);
        return acc.value();
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace needlecast
