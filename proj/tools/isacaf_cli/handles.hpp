// SPDX-License-Identifier: Apache-2.0
// Thin RAII layer over the C API handles.
#pragma once

#include "isacaf/isacaf.h"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

class Failure : public std::runtime_error {
public:
    Failure(int exit_code, const std::string& what) : std::runtime_error(what), code_(exit_code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

inline void check(isacaf_status st, const char* what) {
    if (st != ISACAF_OK)
        throw Failure(kValidation, std::string(what) + ": " + isacaf_status_string(st) + ": " + isacaf_last_error());
}

struct BasisDeleter {
    void operator()(isacaf_basis* p) const noexcept { isacaf_basis_free(p); }
};
struct ConstellationDeleter {
    void operator()(isacaf_constellation* p) const noexcept { isacaf_constellation_free(p); }
};
struct GridDeleter {
    void operator()(isacaf_grid* p) const noexcept { isacaf_grid_free(p); }
};

using Basis = std::unique_ptr<isacaf_basis, BasisDeleter>;
using Constellation = std::unique_ptr<isacaf_constellation, ConstellationDeleter>;
using Grid = std::unique_ptr<isacaf_grid, GridDeleter>;

inline std::vector<double> grid_values(const isacaf_grid* g) {
    const std::size_t n = isacaf_grid_size(g);
    std::vector<double> v(n * n);
    check(isacaf_grid_values(g, v.data(), v.size()), "grid values");
    return v;
}

inline std::vector<double> grid_std_errors(const isacaf_grid* g) {
    if (!isacaf_grid_has_std_errors(g)) return {};
    const std::size_t n = isacaf_grid_size(g);
    std::vector<double> v(n * n);
    check(isacaf_grid_std_errors(g, v.data(), v.size()), "grid std errors");
    return v;
}

}  // namespace cli
