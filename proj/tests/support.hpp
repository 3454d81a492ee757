// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isacaf/basis.hpp"
#include "isacaf/error.hpp"
#include "isacaf/matrix.hpp"
#include "isacaf/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <vector>

namespace testing {

using isacaf::cplx;
using isacaf::CMatrix;
using isacaf::CVector;

inline CVector random_vector(std::size_t n, std::uint64_t seed) {
    isacaf::SplitMix64 g(seed);
    CVector v(n);
    for (auto& z : v) {
        const auto [a, b] = g.normal_pair();
        z = {a, b};
    }
    return v;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

/// Every family that exists at size n. AFDM needs even n; OTFS takes the
/// smallest nontrivial divisor as C.
inline std::vector<std::shared_ptr<const isacaf::UnitaryBasis>> all_bases(std::size_t n, std::uint64_t seed = 11) {
    std::vector<std::shared_ptr<const isacaf::UnitaryBasis>> out;
    out.push_back(std::make_shared<const isacaf::UnitaryBasis>(isacaf::basis_sc(n)));
    out.push_back(std::make_shared<const isacaf::UnitaryBasis>(isacaf::basis_ofdm(n)));
    std::size_t c = n;
    for (std::size_t d = 2; d < n; ++d)
        if (n % d == 0) {
            c = d;
            break;
        }
    out.push_back(std::make_shared<const isacaf::UnitaryBasis>(isacaf::basis_otfs(c, n / c)));
    if (n % 2 == 0)
        out.push_back(std::make_shared<const isacaf::UnitaryBasis>(
            isacaf::basis_afdm(n, 1.0 / (2.0 * static_cast<double>(n)), 0.1)));
    out.push_back(std::make_shared<const isacaf::UnitaryBasis>(isacaf::basis_haar(n, seed)));
    return out;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing

#define CHECK_THROWS_CODE(expr, ec)                                   \
    do {                                                              \
        bool caught_ = false;                                         \
        try {                                                         \
            (void)(expr);                                             \
        } catch (const isacaf::Error& e_) {                           \
            caught_ = true;                                           \
            CHECK(e_.code() == (ec));                                 \
        }                                                             \
        CHECK_MESSAGE(caught_, "expected isacaf::Error from " #expr); \
    } while (0)
