#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace aggsim {

/// The single deterministic stream owned by one trial.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, so the value sequence
/// depends only on the engine and never on the standard library's distributions.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform angle in [-pi, pi).
inline double uniform_angle(Rng& rng) {
    return std::numbers::pi * (2.0 * uniform01(rng) - 1.0);
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b));
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

}  // namespace aggsim
