// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random streams.
//
// Everything random in the library is driven by SplitMix64 (Steele, Lea &
// Flood 2014), chosen because it is random-access in its seed sequence and is
// a few lines in any language:
//
//   mix64(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//              return z ^ (z >> 31)
//   next():    state += 0x9E3779B97F4A7C15; return mix64(state)
//
// Derived seeds:
//   trial_seed(base, t)       = mix64(base + (t + 1) * 0x9E3779B97F4A7C15)
//                               (the t-th output of a SplitMix64 seeded with base)
//   labelled_seed(base, label)= mix64(base ^ fnv1a64(label))
//
// Bounded integers use Lemire's multiply-shift with rejection, uniform
// doubles take the top 53 bits, (k + 0.5) * 2^-53, so they never hit 0 or 1.
// Normals come from Box-Muller on two consecutive uniforms.
#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace isacaf {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) noexcept {
    return mix64(base + (trial + 1) * kSplitMixGamma);
}

constexpr std::uint64_t labelled_seed(std::uint64_t base, std::string_view label) noexcept {
    return mix64(base ^ fnv1a64(label));
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kSplitMixGamma;
        return mix64(state_);
    }

    /// Uniform integer in [0, range), range >= 1.
    std::uint64_t bounded(std::uint64_t range) noexcept;

    /// Uniform double in (0, 1).
    double uniform() noexcept;

    /// Pair of independent standard normals.
    std::pair<double, double> normal_pair() noexcept;

private:
    std::uint64_t state_;
};

}  // namespace isacaf
