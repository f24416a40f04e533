#pragma once

#include <cstdint>
#include <vector>

#include "needlecast/lattice.hpp"

namespace needlecast {

inline constexpr std::int64_t kDefaultMaxNeedles = 100000;
inline constexpr int kMaxBruteforceNeedles = 12;
inline constexpr int kMaxMomentOrder = 32;

/// Needle count of a cluster, capped so pmf sizes stay bounded.
class ClusterSpec {
public:
    explicit ClusterSpec(std::int64_t needles,
                         std::int64_t max_needles = kDefaultMaxNeedles);
    std::int64_t needles() const noexcept { return needles_; }

private:
    std::int64_t needles_;
};

/// Distribution of the intersection count given a fixed cluster centre.
/// probs[i] = p_n(i | centre) for i = 0..2n.
struct ConditionalPmf {
    std::int64_t n = 0;
    ClusterCenter center{};
    std::vector<double> probs;
};

/// Conditional pmf from the closed-form law: point mass at 0 on F1,
/// Binomial(n, q1) on F2-F4, and on F5 the two-crossing mixture
///   p_n(i|.) = sum_j C(n, i-j) C(i-j, j) q2^j q1^{i-2j} q0^{n-i+j}.
/// Terms are evaluated in log space and compensated-summed.
ConditionalPmf conditional_pmf(const ClusterSpec& spec, const ClusterCenter& c);

/// Single entry p_n(i | c) without materializing the whole vector; 0 for i
/// outside [0, 2n]. This is the integrand granularity used by the
/// per-entry unconditional quadrature.
double conditional_pmf_entry(const ClusterSpec& spec, const ClusterCenter& c,
                             std::int64_t i);

/// Independent oracle: enumerates all 3^n assignments of {0,1,2} crossings
/// to needles and accumulates product probabilities by total count.
/// Requires n <= kMaxBruteforceNeedles.
ConditionalPmf conditional_pmf_bruteforce(const ClusterSpec& spec,
                                          const ClusterCenter& c);

/// k-th moment of the arithmetic mean M_n = X_n / n given the centre:
/// sum_i (i/n)^k probs[i]. Requires 1 <= k <= kMaxMomentOrder.
double conditional_moment(const ConditionalPmf& pmf, int k);
double conditional_moment(const ClusterSpec& spec, const ClusterCenter& c, int k);

}  // namespace needlecast
