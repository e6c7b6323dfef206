#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace eqcheck {

/// splitmix64 finalizer; decorrelates derived seeds.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Unbiased uniform draw from [0, bound) via rejection; avoids the
/// implementation-defined stream of std::uniform_int_distribution so that
/// seeded runs reproduce across standard libraries.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t span = std::numeric_limits<std::uint64_t>::max() / bound;
    const std::uint64_t limit = span * bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace eqcheck
