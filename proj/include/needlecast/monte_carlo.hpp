#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "needlecast/conditional_law.hpp"
#include "needlecast/lattice.hpp"

namespace needlecast {

/// One simulation request. Variates are addressed by (seed, throw index)
/// alone, so the histogram is bit-identical for any stream or thread count;
/// streams only partition the work.
struct ThrowConfig {
    ClusterSpec spec;
    LatticeParams lat;
    std::int64_t throws;
    std::uint64_t seed;
    int streams = 0;  // <= 0: resolve from the environment
};

/// Histogram of intersection totals with binomial-approximation errors and
/// empirical moments of X_n = total/n.
struct EmpiricalSummary {
    std::int64_t n = 0;
    std::int64_t throws = 0;
    std::vector<std::int64_t> histogram;    // i = 0..2n
    std::vector<double> frequency;          // histogram / throws
    std::vector<double> standard_error;     // sqrt(p(1-p)/throws)
    std::array<double, 4> moments{};        // E[(total/n)^k], k = 1..4
};

/// Throws the cluster `throws` times: centre uniform on the full cell
/// [0,a] x [0,b] (deliberately not the reduced domain F, which would bake in
/// the symmetry this simulation is meant to validate) and n independent
/// angles uniform on [0, 2pi).
EmpiricalSummary simulate(const ThrowConfig& cfg);

/// Same, with the centre pinned at c; only angles are sampled. Validates the
/// conditional law.
EmpiricalSummary simulate_conditional(const ThrowConfig& cfg,
                                      const ClusterCenter& c);

/// Pearson chi-square test of a histogram against expected probabilities.
/// Adjacent bins are pooled until every tested cell has expected count >=
/// min_expected; cells = number of pooled bins actually tested.
struct GofResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    int cells = 0;
};

GofResult chi_square_gof(const std::vector<std::int64_t>& histogram,
                         std::int64_t throws,
                         const std::vector<double>& expected_probs,
                         double min_expected = 10.0);

}  // namespace needlecast
