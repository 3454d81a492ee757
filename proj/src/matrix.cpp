// SPDX-License-Identifier: Apache-2.0
#include "isacaf/matrix.hpp"

#include "isacaf/error.hpp"

#include <cmath>

namespace isacaf {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::InvalidOrder: return "invalid constellation order";
        case ErrorCode::UnsupportedOrder: return "unsupported constellation order";
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::InvalidParameter: return "invalid basis parameter";
        case ErrorCode::NotUnitary: return "matrix is not unitary";
        case ErrorCode::IndexOutOfRange: return "index out of range";
        case ErrorCode::InvalidKurtosis: return "invalid kurtosis";
        case ErrorCode::AssumptionViolated: return "constellation violates zero-mean/unit-power/zero-pseudo-variance";
        case ErrorCode::BudgetExceeded: return "enumeration budget exceeded";
        case ErrorCode::ShapeMismatch: return "grid shape mismatch";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::Parse: return "parse error";
    }
    return "unknown error";
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
        auto dst = out.col(j);
        for (std::size_t l = 0; l < cols_; ++l) {
            const cplx b = rhs(l, j);
            if (b == cplx{}) continue;
            auto src = col(l);
            for (std::size_t i = 0; i < rows_; ++i) dst[i] += src[i] * b;
        }
    }
    return out;
}

CVector CMatrix::operator*(std::span<const cplx> v) const {
    if (cols_ != v.size())
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product: length differs from column count");
    CVector out(rows_);
    for (std::size_t l = 0; l < cols_; ++l) {
        const cplx b = v[l];
        auto src = col(l);
        for (std::size_t i = 0; i < rows_; ++i) out[i] += src[i] * b;
    }
    return out;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "frobenius_distance: shapes differ");
    double acc = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) acc += std::norm(da[i] - db[i]);
    return std::sqrt(acc);
}

double norm2_squared(std::span<const cplx> v) noexcept {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

}  // namespace isacaf
