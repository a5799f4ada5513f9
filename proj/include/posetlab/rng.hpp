#pragma once

#include <cstdint>

namespace posetlab {

/// SplitMix64 finalizer: a bijective 64-bit mix, used to derive independent
/// streams from (seed, index) pairs.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ index);
}

}  // namespace posetlab
