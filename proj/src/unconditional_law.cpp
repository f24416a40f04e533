#include "needlecast/unconditional_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "needlecast/math_util.hpp"
#include "needlecast/quadrature.hpp"
#include "needlecast/summation.hpp"

namespace needlecast {

namespace {

constexpr Region kQuadRegions[] = {Region::F2, Region::F3, Region::F4,
                                   Region::F5};

// 4*lambda*mu * sum over the four quadrature regions of integral(f), each
// region resolved to tol/4 so the weighted total error stays below tol
// (4*lambda*mu <= 1 for a, b >= 2).
QuadResult integrate_over_f(const std::function<double(const ClusterCenter&)>& f,
                            const LatticeParams& lat, double tol) {
    const double region_tol = tol / 4.0;
    CompensatedSum acc;
    double err = 0.0;
    std::int64_t evals = 0;
    for (const Region m : kQuadRegions) {
        const QuadResult r = integrate_region(f, m, lat, region_tol);
        acc.add(r.value);
        err += r.err_est;
        evals += r.evals;
    }
    const double weight = 4.0 * lat.lambda() * lat.mu();
    return {weight * acc.value(), weight * err, evals};
}

QuadResult entry_value(const ClusterSpec& spec, const LatticeParams& lat,
                       std::int64_t i, double tol) {
    QuadResult r = integrate_over_f(
        [&spec, i](const ClusterCenter& c) {
            return conditional_pmf_entry(spec, c, i);
        },
        lat, tol);
    if (i == 0) {
        // F1 is a point mass at zero; its integral is the region area.
        r.value += (1.0 - 2.0 * lat.lambda()) * (1.0 - 2.0 * lat.mu());
    }
    return r;
}

}  // namespace

double FiniteCdf::operator()(double x) const {
    if (x < 0.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const auto idx =
        static_cast<std::int64_t>(std::floor(static_cast<double>(n) * x));
    return cumulative[std::min(idx, 2 * n)];
}

IntersectionPmf pmf(const ClusterSpec& spec, const LatticeParams& lat,
                    double tol, int threads, std::int64_t max_needles) {
    const std::int64_t n = spec.needles();
    if (n > max_needles) {
        throw std::length_error("pmf: full-pmf quadrature capped at n = " +
                                std::to_string(max_needles));
    }
    IntersectionPmf out{n, lat, std::vector<double>(2 * n + 1, 0.0), tol, 0};
    std::vector<std::int64_t> entry_evals(2 * n + 1, 0);
    parallel_for(2 * n + 1, threads, [&](std::int64_t i) {
        const QuadResult r = entry_value(spec, lat, i, tol);
        out.probs[i] = r.value;
        entry_evals[i] = r.evals;
    });
    for (const std::int64_t e : entry_evals) out.evals += e;

    // Clip quadrature-noise negatives only after the total is known; a
    // genuinely negative entry is a failure, not noise.
    for (double& p : out.probs) {
        if (p < -tol) {
            throw std::runtime_error("pmf: entry below -tol; quadrature failure");
        }
        if (p < 0.0) p = 0.0;
    }
    return out;
}

double pmf_entry(const ClusterSpec& spec, const LatticeParams& lat,
                 std::int64_t i, double tol) {
    if (i < 0 || i > 2 * spec.needles()) return 0.0;
    return entry_value(spec, lat, i, tol).value;
}

FiniteCdf cdf_from_pmf(const IntersectionPmf& p) {
    FiniteCdf out{p.n, p.lat, std::vector<double>(p.probs.size(), 0.0),
                  p.evals};
    CompensatedSum running;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        running.add(p.probs[i]);
        out.cumulative[i] = running.value();
    }
    return out;
}

FiniteCdf cdf(const ClusterSpec& spec, const LatticeParams& lat, double tol,
              int threads) {
    return cdf_from_pmf(pmf(spec, lat, tol, threads));
}

double moment(const ClusterSpec& spec, const LatticeParams& lat, int k,
              double tol) {
    if (k == 0) return 1.0;
    // F1's conditional law is a point mass at zero, so it contributes
    // nothing for k >= 1; only the four quadrature regions remain.
    return integrate_over_f(
               [&spec, k](const ClusterCenter& c) {
                   return conditional_moment(spec, c, k);
               },
               lat, tol)
        .value;
}

}  // namespace needlecast
