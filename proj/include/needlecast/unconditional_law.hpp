#pragma once

#include <cstdint>
#include <vector>

#include "needlecast/conditional_law.hpp"
#include "needlecast/lattice.hpp"

namespace needlecast {

/// Full-pmf quadrature cost grows with n; larger clusters still get
/// moment() (O(n) conditional moments per quadrature node).
inline constexpr std::int64_t kDefaultMaxPmfNeedles = 2000;

/// Unconditional law of the intersection count: probs[i] = p_n(i), i = 0..2n,
/// each entry integrated to absolute tolerance tol.
struct IntersectionPmf {
    std::int64_t n;
    LatticeParams lat;
    std::vector<double> probs;
    double tol;
    std::int64_t evals = 0;  // integrand evaluations across all entries
};

/// Step CDF of X_n = (intersection count)/n: cumulative[i] = F_n(i/n).
struct FiniteCdf {
    std::int64_t n;
    LatticeParams lat;
    std::vector<double> cumulative;
    std::int64_t evals = 0;

    /// F_n(i/n) and its left limit (the step convention is right-continuous).
    double value_at(std::int64_t i) const { return cumulative[i]; }
    double left_limit_at(std::int64_t i) const {
        return i == 0 ? 0.0 : cumulative[i - 1];
    }

    /// F_n(x): 0 below 0, 1 from 2 on, else the floor(n x)-th cumulative.
    double operator()(double x) const;
};

/// p_n via Eq.-style region decomposition: one quadrature per entry and
/// region, 4*lambda*mu weighting, F1 contributing its closed-form area to
/// i = 0 only. Entries integrate independently across `threads` workers
/// (0 = resolve from the environment); the result does not depend on the
/// schedule. Requires n <= max_needles.
IntersectionPmf pmf(const ClusterSpec& spec, const LatticeParams& lat,
                    double tol, int threads = 0,
                    std::int64_t max_needles = kDefaultMaxPmfNeedles);

/// Single entry p_n(i) without computing the full vector.
double pmf_entry(const ClusterSpec& spec, const LatticeParams& lat,
                 std::int64_t i, double tol);

/// Cumulative sums of a pmf.
FiniteCdf cdf_from_pmf(const IntersectionPmf& p);
FiniteCdf cdf(const ClusterSpec& spec, const LatticeParams& lat, double tol,
              int threads = 0);

/// E(X_n^k) for X_n = (count)/n, by integrating the conditional moment over
/// the fundamental subset. k = 0 returns 1 exactly; 1 <= k <= kMaxMomentOrder
/// integrates. Works for any n admitted by ClusterSpec.
double moment(const ClusterSpec& spec, const LatticeParams& lat, int k,
              double tol);

}  // namespace needlecast
