// SPDX-License-Identifier: Apache-2.0
//
// CSV grid files. Every file opens with a '#' comment line naming the size,
// the axis convention (rows = delay k, columns = Doppler q) and, for
// expectation grids, the provenance. Numbers use 17 significant digits.
//
//   long, realization:   k,q,re,im,sq
//   long, expectation:   k,q,value            (closed form / exact)
//                        k,q,value,stderr     (Monte Carlo)
//   dense:               N rows of N comma-separated values; a Monte Carlo
//                        grid appends "# std_errors" and N more rows.
#pragma once

#include "isacaf/dpaf.hpp"
#include "isacaf/grid.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace isacaf {

enum class GridFormat { Long, Dense };

GridFormat grid_format_from_string(const std::string& s);

/// %.17g
std::string format_number(double v);

void write_dpaf_csv(std::ostream& out, const DpafGrid& g, GridFormat fmt);
void write_expectation_csv(std::ostream& out, const ExpectationGrid& g, GridFormat fmt);
void save_expectation_csv(const std::filesystem::path& path, const ExpectationGrid& g, GridFormat fmt);
void save_dpaf_csv(const std::filesystem::path& path, const DpafGrid& g, GridFormat fmt);

/// Reads either layout written by write_expectation_csv. A long realization
/// file (k,q,re,im,sq) loads its sq column.
ExpectationGrid read_expectation_csv(std::istream& in);
ExpectationGrid load_expectation_csv(const std::filesystem::path& path);

}  // namespace isacaf
