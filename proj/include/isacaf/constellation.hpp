// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isacaf/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace isacaf {

inline constexpr double kDefaultAssumptionTol = 1e-9;

/// Finite symbol alphabet, drawn uniformly. Immutable once built.
class Constellation {
public:
    /// Rejects empty or duplicated point sets. No normalization is applied.
    Constellation(std::vector<cplx> points, std::string name);

    const std::vector<cplx>& points() const noexcept { return points_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// Copy scaled to unit mean power.
    Constellation normalized() const;

private:
    std::vector<cplx> points_;
    std::string name_;
};

struct MomentReport {
    cplx mean;
    double power = 0.0;        // E|s|^2
    cplx pseudo_variance;      // E s^2
    double kurtosis = 0.0;     // E|s - Es|^4 / (E|s - Es|^2)^2
    double fourth_moment = 0.0;  // E|s|^4, equals kurtosis under zero mean and unit power
    bool assumption1_ok = false;
    double tolerance = kDefaultAssumptionTol;
};

/// e^{j 2 pi m / M}, m = 0..M-1.
Constellation make_psk(int order);

/// Square QAM on odd-integer coordinates, scaled to unit mean power.
Constellation make_qam(int order);

/// Exact uniform-law averages over the alphabet.
MomentReport moments(const Constellation& c, double tol = kDefaultAssumptionTol);

/// N i.i.d. uniform draws; a pure function of (c, n, seed). See rng.hpp for
/// the stream definition.
CVector sample_symbols(const Constellation& c, std::size_t n, std::uint64_t seed);

/// Parse names such as "qpsk", "bpsk", "16qam", "16-QAM", "qam64", "8psk",
/// "psk:8". Case-insensitive.
Constellation constellation_from_name(const std::string& name);

/// Plain-text import, one "re im" pair per line; '#' starts a comment.
Constellation load_constellation(const std::filesystem::path& path, bool normalize);

}  // namespace isacaf
