#include "needlecast/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace needlecast {

namespace {

void require_increasing(const std::vector<std::int64_t>& n_list) {
    if (n_list.empty()) {
        throw std::invalid_argument("n list must not be empty");
    }
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("n values must be strictly increasing");
        }
    }
}

std::vector<double> moment_gaps_at(const ClusterSpec& spec,
                                   const LatticeParams& lat,
                                   const LimitLaw& law, int k_max, double tol) {
    std::vector<double> gaps(k_max);
    for (int k = 1; k <= k_max; ++k) {
        gaps[k - 1] =
            std::abs(moment(spec, lat, k, tol) - limit_moment(law, k, tol));
    }
    return gaps;
}

}  // namespace

double sup_distance_between(const FiniteCdf& fn, const LimitLaw& law,
                            int grid_points) {
    double sup = 0.0;
    // Jump points of the step function: compare the right value against
    // F(x) and the left limit against F(x-). F is continuous except at 0.
    for (std::int64_t i = 0; i <= 2 * fn.n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(fn.n);
        const double limit_right = limit_cdf(law, x);
        const double limit_left = i == 0 ? 0.0 : limit_right;
        sup = std::max(sup, std::abs(fn.value_at(i) - limit_right));
        sup = std::max(sup, std::abs(fn.left_limit_at(i) - limit_left));
    }
    for (int g = 0; g <= grid_points; ++g) {
        const double x = 2.0 * static_cast<double>(g) / grid_points;
        sup = std::max(sup, std::abs(fn(x) - limit_cdf(law, x)));
    }
    return sup;
}

double sup_distance(const ClusterSpec& spec, const LatticeParams& lat,
                    double tol, int threads) {
    return sup_distance_between(cdf(spec, lat, tol, threads),
                                LimitLaw::from_lattice(lat));
}

double atom_gap(const ClusterSpec& spec, const LatticeParams& lat, double tol) {
    return std::abs(pmf_entry(spec, lat, 0, tol) -
                    limit_atom(LimitLaw::from_lattice(lat)));
}

std::vector<MomentGapRow> moment_gap_table(const LatticeParams& lat,
                                           const std::vector<std::int64_t>& n_list,
                                           int k_max, double tol) {
    require_increasing(n_list);
    const LimitLaw law = LimitLaw::from_lattice(lat);
    std::vector<MomentGapRow> table;
    table.reserve(n_list.size());
    for (const std::int64_t n : n_list) {
        table.push_back(
            {n, moment_gaps_at(ClusterSpec(n), lat, law, k_max, tol)});
    }
    return table;
}

ConvergenceReport convergence_report(const LatticeParams& lat,
                                     const std::vector<std::int64_t>& n_list,
                                     int k_max, double tol, int threads) {
    require_increasing(n_list);
    const LimitLaw law = LimitLaw::from_lattice(lat);
    ConvergenceReport report{lat, k_max, tol, {}};
    report.rows.reserve(n_list.size());
    for (const std::int64_t n : n_list) {
        const ClusterSpec spec(n);
        const IntersectionPmf p = pmf(spec, lat, tol, threads);
        ConvergenceRow row;
        row.n = n;
        row.sup_distance = sup_distance_between(cdf_from_pmf(p), law);
        row.atom_gap = std::abs(p.probs[0] - limit_atom(law));
        row.moment_gaps = moment_gaps_at(spec, lat, law, k_max, tol);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace needlecast
