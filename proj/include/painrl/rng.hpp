#pragma once

#include <cstdint>
#include <random>

namespace painrl {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(mix64(a) ^ (b * 0xD6E8FEB86659FD93ULL));
}

/// Seeded random stream with platform-stable draws.
///
/// std::mt19937_64 output is fixed by the standard, but the std
/// distributions are not, so bounded integers and unit reals are
/// derived from raw 64-bit words here. Every draw consumes exactly
/// one word.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). Multiply-shift mapping; the bias is
    /// below 2^-60 for the tiny bounds used here.
    std::uint32_t uniform_index(std::uint32_t bound) {
        const uint128 wide = static_cast<uint128>(engine_()) * bound;
        return static_cast<std::uint32_t>(wide >> 64);
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    __extension__ using uint128 = unsigned __int128;

    std::mt19937_64 engine_;
};

}  // namespace painrl
