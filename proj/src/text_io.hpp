// SPDX-License-Identifier: Apache-2.0
// Small tokenizing helpers shared by the file importers.
#pragma once

#include "isacaf/matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace isacaf::detail {

std::string_view strip_comment(std::string_view line);

/// Whitespace and comma separated tokens.
std::vector<std::string> split_tokens(std::string_view line);

double parse_real(const std::string& token);

/// Accepts "1.5", "-2j", "0.5+0.25j", "1e-3-4e-2i", "j".
cplx parse_complex(const std::string& token);

}  // namespace isacaf::detail
