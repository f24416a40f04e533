#include "needlecast/conditional_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "needlecast/math_util.hpp"
#include "needlecast/summation.hpp"

namespace needlecast {

namespace {

// Terms whose log falls below this are under 1e-320 and cannot move any
// pmf entry at the documented absolute tolerance; skipping them is safe.
constexpr double kLogFloor = -736.827;

// Per-centre log probabilities, computed once so the inner term loops are
// pure arithmetic over the log-factorial table.
struct LogProfile {
    double lq0;
    double lq1;
    double lq2;
};

LogProfile log_profile(const CrossingProfile& q) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    return {q.q0 > 0.0 ? std::log(q.q0) : kNegInf,
            q.q1 > 0.0 ? std::log(q.q1) : kNegInf,
            q.q2 > 0.0 ? std::log(q.q2) : kNegInf};
}

// log(base^e) with the convention 0^0 = 1 (lq may be -inf).
double epow(std::int64_t e, double lq) {
    return e == 0 ? 0.0 : static_cast<double>(e) * lq;
}

double binomial_entry(std::int64_t n, std::int64_t i, const LogProfile& p) {
    if (i > n) return 0.0;
    const double lg = log_factorial(n) - log_factorial(i) - log_factorial(n - i) +
                      epow(i, p.lq1) + epow(n - i, p.lq0);
    return std::exp(lg);
}

// F5 entry: sum over j = number of needles with two crossings. The term
// sequence is log-concave in j, so after the first term above the floor the
// scan can stop at the next one below it.
double two_crossing_entry(std::int64_t n, std::int64_t i, const LogProfile& p) {
    const std::int64_t j_lo = std::max<std::int64_t>(0, i - n);
    const std::int64_t j_hi = i / 2;
    const double lfn = log_factorial(n);
    CompensatedSum acc;
    bool above_floor = false;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        const double lg = lfn - log_factorial(j) - log_factorial(i - 2 * j) -
                          log_factorial(n - i + j) + epow(j, p.lq2) +
                          epow(i - 2 * j, p.lq1) + epow(n - i + j, p.lq0);
        if (lg < kLogFloor) {
            if (above_floor) break;
            continue;
        }
        above_floor = true;
        acc.add(std::exp(lg));
    }
    return acc.value();
}

}  // namespace

ClusterSpec::ClusterSpec(std::int64_t needles, std::int64_t max_needles)
    : needles_(needles) {
    if (needles < 1) {
        throw std::invalid_argument("ClusterSpec: needle count must be positive");
    }
    if (needles > max_needles) {
        throw std::length_error("ClusterSpec: needle count " +
                                std::to_string(needles) + " exceeds cap " +
                                std::to_string(max_needles));
    }
}

double conditional_pmf_entry(const ClusterSpec& spec, const ClusterCenter& c,
                             std::int64_t i) {
    const std::int64_t n = spec.needles();
    if (i < 0 || i > 2 * n) return 0.0;
    if (c.region == Region::F1) return i == 0 ? 1.0 : 0.0;
    const LogProfile p = log_profile(crossing_profile(c));
    if (c.region != Region::F5) return binomial_entry(n, i, p);
    return two_crossing_entry(n, i, p);
}

ConditionalPmf conditional_pmf(const ClusterSpec& spec, const ClusterCenter& c) {
    const std::int64_t n = spec.needles();
    ConditionalPmf out{n, c, std::vector<double>(2 * n + 1, 0.0)};

    if (c.region == Region::F1) {
        out.probs[0] = 1.0;
        return out;
    }

    const LogProfile p = log_profile(crossing_profile(c));
    if (c.region != Region::F5) {
        for (std::int64_t i = 0; i <= n; ++i) {
            out.probs[i] = binomial_entry(n, i, p);
        }
        return out;
    }
    for (std::int64_t i = 0; i <= 2 * n; ++i) {
        out.probs[i] = two_crossing_entry(n, i, p);
    }
    return out;
}

ConditionalPmf conditional_pmf_bruteforce(const ClusterSpec& spec,
                                          const ClusterCenter& c) {
    const auto n = static_cast<int>(spec.needles());
    if (n > kMaxBruteforceNeedles) {
        throw std::length_error(
            "conditional_pmf_bruteforce: 3^n enumeration capped at n = " +
            std::to_string(kMaxBruteforceNeedles));
    }
    const CrossingProfile q = crossing_profile(c);
    const double per_needle[3] = {q.q0, q.q1, q.q2};

    std::vector<CompensatedSum> acc(2 * n + 1);
    std::vector<int> crossings(n, 0);
    for (;;) {
        double prod = 1.0;
        int total = 0;
        for (const int d : crossings) {
            prod *= per_needle[d];
            total += d;
        }
        acc[total].add(prod);

        int pos = 0;
        while (pos < n && ++crossings[pos] == 3) {
            crossings[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }

    ConditionalPmf out{n, c, std::vector<double>(2 * n + 1, 0.0)};
    for (std::size_t i = 0; i < acc.size(); ++i) out.probs[i] = acc[i].value();
    return out;
}

double conditional_moment(const ConditionalPmf& pmf, int k) {
    if (k < 1 || k > kMaxMomentOrder) {
        throw std::invalid_argument("conditional_moment: order must be in [1, " +
                                    std::to_string(kMaxMomentOrder) + "]");
    }
    const auto n = static_cast<double>(pmf.n);
    CompensatedSum acc;
    for (std::size_t i = 0; i < pmf.probs.size(); ++i) {
        if (pmf.probs[i] == 0.0) continue;
        acc.add(std::pow(static_cast<double>(i) / n, k) * pmf.probs[i]);
    }
    return acc.value();
}

double conditional_moment(const ClusterSpec& spec, const ClusterCenter& c,
                          int k) {
    return conditional_moment(conditional_pmf(spec, c), k);
}

}  // namespace needlecast
