#pragma once

#include <cstdint>
#include <initializer_list>

namespace crackforge {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a stream key from a seed and a path of counters such as
/// (pass, endpoint index). Results are identical on every platform.
inline std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    for (const std::uint64_t part : path)
        key = mix64(key ^ mix64(part + 0x9e3779b97f4a7c15ULL));
    return key;
}

/// Counter-based stream: the n-th draw is mix64(key + n * golden). Portable,
/// unlike the standard distributions whose outputs vary across libraries.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t key) noexcept
        : key_(key)
    {
    }

    std::uint64_t next_u64() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept
    {
        if (hi <= lo)
            return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= limit)
                return lo + static_cast<std::int64_t>(r % span);
        }
    }

    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace crackforge
