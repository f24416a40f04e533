#pragma once

#include <cstdint>
#include <vector>

#include "needlecast/limit_law.hpp"
#include "needlecast/unconditional_law.hpp"

namespace needlecast {

/// One lattice's convergence table: for each n, the Kolmogorov distance
/// sup_x |F_n(x) - F(x)|, the atom gap |p_n(0) - (1-2 lambda)(1-2 mu)|, and
/// the moment gaps |E(X_n^k) - E(X^k)| for k = 1..k_max.
struct ConvergenceRow {
    std::int64_t n = 0;
    double sup_distance = 0.0;
    double atom_gap = 0.0;
    std::vector<double> moment_gaps;
};

struct ConvergenceReport {
    LatticeParams lat;
    int k_max;
    double tol;
    std::vector<ConvergenceRow> rows;  // n strictly increasing
};

struct MomentGapRow {
    std::int64_t n = 0;
    std::vector<double> gaps;  // k = 1..k_max
};

/// sup |F_n - F| over both one-sided limits at every jump point i/n plus a
/// uniform grid on [0, 2] (F_n carries mass up to 2; F is 1 from 1 on).
double sup_distance_between(const FiniteCdf& fn, const LimitLaw& law,
                            int grid_points = 10000);
double sup_distance(const ClusterSpec& spec, const LatticeParams& lat,
                    double tol, int threads = 0);

/// |p_n(0) - limit atom|.
double atom_gap(const ClusterSpec& spec, const LatticeParams& lat, double tol);

/// Per-(n, k) gaps between the finite and limit moments, n_list strictly
/// increasing.
std::vector<MomentGapRow> moment_gap_table(const LatticeParams& lat,
                                           const std::vector<std::int64_t>& n_list,
                                           int k_max, double tol);

/// Full table: one pmf per n feeds the sup distance and the atom gap; the
/// moment gaps integrate conditional moments directly so their error stays
/// at quadrature scale rather than accumulating across pmf entries.
ConvergenceReport convergence_report(const LatticeParams& lat,
                                     const std::vector<std::int64_t>& n_list,
                                     int k_max, double tol, int threads = 0);

}  // namespace needlecast
