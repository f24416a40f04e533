#pragma once

#include <cstdint>
#include <functional>

namespace needlecast {

/// log(m!) for m >= 0. Table-backed for m < 131072, lgamma beyond.
double log_factorial(std::int64_t m);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// for a > 0, x >= 0. Series for x < a + 1, continued fraction otherwise.
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double stat, double df);

/// Runs fn(i) for i in [0, count). With threads > 1 the indices are
/// assigned round-robin to that many workers; fn must be safe to call
/// concurrently for distinct i. Exceptions from workers are rethrown.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

/// Worker count resolution: explicit value wins, otherwise hardware
/// concurrency (at least 1).
int resolve_threads(int requested);

}  // namespace needlecast
