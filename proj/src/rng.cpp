// SPDX-License-Identifier: Apache-2.0
#include "isacaf/rng.hpp"

#include <cmath>
#include <numbers>

namespace isacaf {

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t SplitMix64::bounded(std::uint64_t range) noexcept {
    std::uint64_t x = next();
    auto m = static_cast<u128>(x) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            x = next();
            m = static_cast<u128>(x) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double SplitMix64::uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::normal_pair() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace isacaf
