#pragma once

#include <cstdint>

namespace mnconvex {

// Counter-based generator: draw i of a stream keyed by `seed` is a pure
// function of (seed, i), so sampling is order-independent and reproducible
// across platforms. The mixer is the splitmix64 finalizer.
namespace rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + kGolden * (counter + 1));
}

// Uniform in [0, 1): top 53 bits of the hash scaled by 2^-53.
inline constexpr double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(hash(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace rng
}  // namespace mnconvex
