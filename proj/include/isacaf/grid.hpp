// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace isacaf {

enum class Provenance { ClosedFormGeneral, ClosedFormFast, MonteCarlo, ExactEnumeration };

const char* to_string(Provenance p) noexcept;
Provenance provenance_from_string(const std::string& s);

/// N x N real grid of E|X(k,q)|^2, row-major with k (delay) as the row.
struct ExpectationGrid {
    std::size_t n = 0;
    std::vector<double> values;
    Provenance provenance = Provenance::ClosedFormGeneral;
    /// Per-cell standard errors; Monte Carlo with >= 2 trials only.
    std::vector<double> std_errors;
    std::size_t trials = 0;

    ExpectationGrid() = default;
    ExpectationGrid(std::size_t size, Provenance p) : n(size), values(size * size, 0.0), provenance(p) {}

    double& at(std::size_t k, std::size_t q) { return values[k * n + q]; }
    double at(std::size_t k, std::size_t q) const { return values[k * n + q]; }
    double se(std::size_t k, std::size_t q) const { return std_errors[k * n + q]; }
    bool has_std_errors() const noexcept { return !std_errors.empty(); }
};

}  // namespace isacaf
