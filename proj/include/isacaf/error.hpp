// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace isacaf {

enum class ErrorCode {
    InvalidArgument = 1,
    InvalidOrder,        // PSK order below 2
    UnsupportedOrder,    // QAM order not a perfect square >= 4
    DimensionMismatch,
    InvalidParameter,    // basis family parameters (OTFS split, AFDM chirp)
    NotUnitary,
    IndexOutOfRange,
    InvalidKurtosis,
    AssumptionViolated,  // constellation fails zero mean / unit power / zero pseudo-variance
    BudgetExceeded,
    ShapeMismatch,
    Io,
    Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code survives the trip through
/// the C API as an integer status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace isacaf
