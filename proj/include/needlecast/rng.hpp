#pragma once

#include <array>
#include <cstdint>

namespace needlecast {

/// Philox4x32-10 counter-based generator. Pure function of (counter, key):
/// the same inputs give the same outputs on every platform, which makes
/// per-throw variates independent of how throws are partitioned into
/// streams or threads.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter round10(Counter ctr, Key key) {
        for (int r = 0; r < 10; ++r) {
            ctr = one_round(ctr, key);
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

private:
    static Counter one_round(const Counter& c, const Key& k) {
        const std::uint64_t p0 = 0xD2511F53ull * c[0];
        const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Deterministic uniform variates addressed by (throw index, variate index).
/// Each Philox block yields two doubles in [0, 1); block j >> 1 of throw t is
/// generated with counter {t_lo, t_hi, j >> 1, 0} and key = seed, so a given
/// (seed, throw, variate) triple always maps to the same value.
class ThrowSampler {
public:
    explicit ThrowSampler(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)} {}

    double uniform(std::uint64_t throw_index, std::uint32_t variate_index) const {
        const Philox4x32::Counter ctr = {
            static_cast<std::uint32_t>(throw_index),
            static_cast<std::uint32_t>(throw_index >> 32),
            variate_index >> 1, 0u};
        const Philox4x32::Counter out = Philox4x32::round10(ctr, key_);
        const int base = (variate_index & 1u) ? 2 : 0;
        const std::uint64_t bits =
            (static_cast<std::uint64_t>(out[base]) << 32) | out[base + 1];
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
};

}  // namespace needlecast
