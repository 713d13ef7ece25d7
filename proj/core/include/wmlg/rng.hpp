#pragma once

#include <cstdint>

#include "wmlg/stats.hpp"

// Counter-based pseudo-random streams. Every (seed, replication, unit) triple
// names an independent stream whose outputs depend only on the triple and the
// draw counter -- never on scheduling -- so simulation results are bitwise
// reproducible under any parallel execution order.

namespace wmlg {

namespace detail {

constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull; // 2^64 / golden ratio

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer (Stafford variant 13)
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

} // namespace detail

/// Derive the base key of the stream identified by (seed, replication, unit).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replication,
                                std::uint64_t unit) {
    using detail::kWeyl;
    using detail::mix64;
    std::uint64_t h = mix64(seed + kWeyl);
    h = mix64(h ^ (replication * 0xD6E8FEB86659FD93ull + kWeyl));
    h = mix64(h ^ (unit * 0xA3B195354A39B70Dull + kWeyl));
    return h;
}

/// A stateless-per-draw stream: output i is mix64(key + i*Weyl), i.e. the
/// splitmix64 sequence seeded at `key`, realized as a pure counter function.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}
    RandomStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t unit)
        : key_(stream_key(seed, replication, unit)) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kWeyl); }

    /// Uniform on the open interval (0,1): 53 mantissa bits, offset half a ulp
    /// so 0 and 1 are unreachable and norm_quantile is always safe to call.
    double uniform01() {
        return (double)(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    /// Standard normal by inversion (keeps the counter advance exactly one
    /// draw per variate, which the stream contract relies on).
    double normal() { return norm_quantile(uniform01()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace wmlg
