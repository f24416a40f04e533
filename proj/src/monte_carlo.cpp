#include "needlecast/monte_carlo.hpp"

#include <cassert>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "needlecast/math_util.hpp"
#include "needlecast/rng.hpp"
#include "needlecast/summation.hpp"

namespace needlecast {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Runs one throw and returns the cluster's intersection total. The sampler
// draws variate v of throw t as a pure function of (seed, t, v), so the
// caller's partitioning of throws across workers cannot change any outcome.
template <typename ThrowFn>
EmpiricalSummary run_throws(const ThrowConfig& cfg, ThrowFn one_throw) {
    if (cfg.throws < 1) {
        throw std::invalid_argument("simulate: throw count must be >= 1");
    }
    const std::int64_t n = cfg.spec.needles();
    const std::int64_t bins = 2 * n + 1;
    const int workers = resolve_threads(cfg.streams);
    const ThrowSampler sampler(cfg.seed);

    std::vector<std::vector<std::int64_t>> partial(
        workers, std::vector<std::int64_t>(bins, 0));
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                std::vector<std::int64_t>& hist = partial[w];
                for (std::int64_t t = w; t < cfg.throws; t += workers) {
                    const std::int64_t total = one_throw(sampler, t);
                    assert(total >= 0 && total <= 2 * n);
                    ++hist[total];
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    EmpiricalSummary out;
    out.n = n;
    out.throws = cfg.throws;
    out.histogram.assign(bins, 0);
    for (const auto& hist : partial) {
        for (std::int64_t i = 0; i < bins; ++i) out.histogram[i] += hist[i];
    }

    const auto total_throws = static_cast<double>(cfg.throws);
    out.frequency.resize(bins);
    out.standard_error.resize(bins);
    for (std::int64_t i = 0; i < bins; ++i) {
        const double p = static_cast<double>(out.histogram[i]) / total_throws;
        out.frequency[i] = p;
        out.standard_error[i] = std::sqrt(p * (1.0 - p) / total_throws);
    }
    for (int k = 1; k <= 4; ++k) {
        CompensatedSum acc;
        for (std::int64_t i = 0; i < bins; ++i) {
            if (out.histogram[i] == 0) continue;
            acc.add(std::pow(static_cast<double>(i) / static_cast<double>(n), k) *
                    out.frequency[i]);
        }
        out.moments[k - 1] = acc.value();
    }
    return out;
}

}  // namespace

EmpiricalSummary simulate(const ThrowConfig& cfg) {
    const std::int64_t n = cfg.spec.needles();
    const double a = cfg.lat.a();
    const double b = cfg.lat.b();
    return run_throws(cfg, [&, n, a, b](const ThrowSampler& sampler,
                                        std::int64_t t) {
        // Variates 0 and 1 are the centre, 2..n+1 the needle angles.
        const double cx = a * sampler.uniform(t, 0);
        const double cy = b * sampler.uniform(t, 1);
        std::int64_t total = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            const double phi =
                kTwoPi * sampler.uniform(t, static_cast<std::uint32_t>(2 + k));
            total += needle_crossings(cx, cy, phi, cfg.lat);
        }
        return total;
    });
}

EmpiricalSummary simulate_conditional(const ThrowConfig& cfg,
                                      const ClusterCenter& c) {
    const std::int64_t n = cfg.spec.needles();
    return run_throws(cfg, [&, n](const ThrowSampler& sampler, std::int64_t t) {
        std::int64_t total = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            const double phi =
                kTwoPi * sampler.uniform(t, static_cast<std::uint32_t>(k));
            total += needle_crossings(c.x, c.y, phi, cfg.lat);
        }
        return total;
    });
}

GofResult chi_square_gof(const std::vector<std::int64_t>& histogram,
                         std::int64_t throws,
                         const std::vector<double>& expected_probs,
                         double min_expected) {
    if (histogram.size() != expected_probs.size()) {
        throw std::invalid_argument("chi_square_gof: size mismatch");
    }
    const auto total = static_cast<double>(throws);

    // Pool adjacent bins until each cell's expected count reaches the
    // threshold; a short tail joins the last closed cell.
    std::vector<double> exp_cells;
    std::vector<double> obs_cells;
    double exp_acc = 0.0;
    double obs_acc = 0.0;
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        exp_acc += expected_probs[i] * total;
        obs_acc += static_cast<double>(histogram[i]);
        if (exp_acc >= min_expected) {
            exp_cells.push_back(exp_acc);
            obs_cells.push_back(obs_acc);
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 || obs_acc > 0.0) {
        if (exp_cells.empty()) {
            exp_cells.push_back(exp_acc);
            obs_cells.push_back(obs_acc);
        } else {
            exp_cells.back() += exp_acc;
            obs_cells.back() += obs_acc;
        }
    }

    GofResult out;
    out.cells = static_cast<int>(exp_cells.size());
    if (out.cells < 2) return out;  // nothing testable; p_value = 1

    CompensatedSum stat;
    for (std::size_t c = 0; c < exp_cells.size(); ++c) {
        const double d = obs_cells[c] - exp_cells[c];
        stat.add(d * d / exp_cells[c]);
    }
    out.statistic = stat.value();
    out.df = static_cast<double>(out.cells - 1);
    out.p_value = chi_square_sf(out.statistic, out.df);
    return out;
}

}  // namespace needlecast
