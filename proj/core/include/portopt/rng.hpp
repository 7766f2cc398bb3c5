#pragma once

#include <cstdint>
#include <random>

namespace portopt {

/// SplitMix64 step; used to stretch and mix seed material.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (base, stream). Used so
/// restarts, sub-system solves and pipeline stages replay from one
/// reported seed without sharing generator state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base;
    splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream + 1);
    std::uint64_t out = splitmix64(s);
    return out;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace portopt
