// SPDX-License-Identifier: Apache-2.0
#include "isacaf/basis.hpp"

#include "isacaf/error.hpp"
#include "isacaf/rng.hpp"
#include "text_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace isacaf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{j 2 pi r / n} with r reduced mod n first.
cplx unit_root(std::size_t n, std::size_t r) {
    r %= n;
    if (r == 0) return {1.0, 0.0};
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

// e^{j 2 pi c n^2}, argument reduced to [0, 1) turns.
cplx chirp(double c, std::size_t n) {
    const double nn = static_cast<double>(n);
    const double turns = std::fmod(c * nn * nn, 1.0);
    return std::polar(1.0, kTwoPi * turns);
}

void require_size(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "basis size must be positive");
}

}  // namespace

const char* to_string(BasisFamily f) noexcept {
    switch (f) {
        case BasisFamily::SC: return "SC";
        case BasisFamily::OFDM: return "OFDM";
        case BasisFamily::OTFS: return "OTFS";
        case BasisFamily::AFDM: return "AFDM";
        case BasisFamily::Custom: return "Custom";
    }
    return "?";
}

UnitaryBasis::UnitaryBasis(BasisFamily family, std::string label, BasisParams params, CMatrix matrix)
    : family_(family), label_(std::move(label)), params_(params), matrix_(std::move(matrix)) {
    if (!matrix_.square() || matrix_.rows() == 0)
        throw Error(ErrorCode::DimensionMismatch, "basis matrix must be square and non-empty");
}

cplx dft_entry(std::size_t n_size, std::size_t m, std::size_t n) {
    const std::size_t r = (m % n_size) * (n % n_size) % n_size;
    return std::conj(unit_root(n_size, r)) / std::sqrt(static_cast<double>(n_size));
}

DftMatrix::DftMatrix(std::size_t n) : matrix_(n, n) {
    require_size(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) matrix_(r, c) = dft_entry(n, r, c);
}

DftMatrix dft_matrix(std::size_t n) { return DftMatrix(n); }

CVector apply_shift(std::span<const cplx> x, ShiftIndex k) {
    const std::size_t n = x.size();
    if (k.k >= n)
        throw Error(ErrorCode::IndexOutOfRange,
                    "shift index " + std::to_string(k.k) + " outside [0, " + std::to_string(n) + ")");
    CVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[(i + n - k.k) % n];
    return out;
}

CMatrix shift_matrix_dense(std::size_t n, ShiftIndex k) {
    if (k.k >= n) throw Error(ErrorCode::IndexOutOfRange, "shift index outside [0, N)");
    CMatrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, (i + n - k.k) % n) = 1.0;
    return j;
}

UnitaryBasis basis_sc(std::size_t n) {
    require_size(n);
    return UnitaryBasis(BasisFamily::SC, "SC", {}, CMatrix::identity(n));
}

UnitaryBasis basis_ofdm(std::size_t n) {
    require_size(n);
    CMatrix u(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = std::conj(dft_entry(n, c, r));
    return UnitaryBasis(BasisFamily::OFDM, "OFDM", {}, std::move(u));
}

UnitaryBasis basis_otfs(std::size_t c, std::size_t l) {
    if (c == 0 || l == 0)
        throw Error(ErrorCode::InvalidParameter, "OTFS needs C >= 1 and L >= 1");
    const std::size_t n = c * l;
    // (F_C^H kron I_L)(a L + b, d L + e) = conj(F_C(d, a)) delta_{b,e}; only the
    // block diagonals are touched.
    CMatrix u(n, n);
    for (std::size_t a = 0; a < c; ++a)
        for (std::size_t d = 0; d < c; ++d) {
            const cplx w = std::conj(dft_entry(c, d, a));
            for (std::size_t b = 0; b < l; ++b) u(a * l + b, d * l + b) = w;
        }
    BasisParams p;
    p.otfs_c = c;
    p.otfs_l = l;
    return UnitaryBasis(BasisFamily::OTFS,
                        "OTFS(C=" + std::to_string(c) + ",L=" + std::to_string(l) + ")", p, std::move(u));
}

UnitaryBasis basis_afdm(std::size_t n, double c1, double c2) {
    require_size(n);
    if (n % 2 != 0) throw Error(ErrorCode::InvalidParameter, "AFDM requires even N");
    if (!std::isfinite(c1) || !std::isfinite(c2))
        throw Error(ErrorCode::InvalidParameter, "AFDM chirp rates must be finite");
    const double p = 2.0 * static_cast<double>(n) * c1;
    if (std::abs(p - std::round(p)) > 1e-9)
        throw Error(ErrorCode::InvalidParameter, "AFDM requires 2 N c1 to be an integer");
    CMatrix u(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const cplx right = chirp(c2, col);
        for (std::size_t r = 0; r < n; ++r)
            u(r, col) = chirp(c1, r) * std::conj(dft_entry(n, col, r)) * right;
    }
    BasisParams params;
    params.afdm_c1 = c1;
    params.afdm_c2 = c2;
    std::ostringstream label;
    label.precision(17);
    label << "AFDM(c1=" << c1 << ",c2=" << c2 << ")";
    return UnitaryBasis(BasisFamily::AFDM, label.str(), params, std::move(u));
}

UnitaryBasis basis_haar(std::size_t n, std::uint64_t seed) {
    require_size(n);
    SplitMix64 rng(seed);
    CMatrix z(n, n);
    // Column-major fill, one normal pair per entry (re, im).
    for (auto& v : z.data()) {
        const auto [re, im] = rng.normal_pair();
        v = {re, im};
    }
    // Modified Gram-Schmidt with one re-orthogonalization pass. The implied R
    // has a positive real diagonal, which is what makes Q Haar distributed.
    for (std::size_t j = 0; j < n; ++j) {
        auto vj = z.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                auto qi = z.col(i);
                cplx proj{};
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(qi[r]) * vj[r];
                for (std::size_t r = 0; r < n; ++r) vj[r] -= proj * qi[r];
            }
        }
        const double nrm = std::sqrt(norm2_squared(vj));
        for (auto& v : vj) v /= nrm;
    }
    BasisParams p;
    p.seed = seed;
    return UnitaryBasis(BasisFamily::Custom, "Haar(seed=" + std::to_string(seed) + ")", p, std::move(z));
}

UnitarityCheck verify_unitary(const CMatrix& u, double tol) {
    if (!u.square()) throw Error(ErrorCode::DimensionMismatch, "verify_unitary: matrix is not square");
    const std::size_t n = u.rows();
    double acc = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        auto ca = u.col(a);
        for (std::size_t b = 0; b < n; ++b) {
            auto cb = u.col(b);
            cplx g{};
            for (std::size_t r = 0; r < n; ++r) g += std::conj(ca[r]) * cb[r];
            if (a == b) g -= 1.0;
            acc += std::norm(g);
        }
    }
    UnitarityCheck out;
    out.defect = std::sqrt(acc);
    out.ok = out.defect <= tol;
    return out;
}

UnitaryBasis basis_custom(CMatrix u, double tol, std::string label) {
    if (!u.square() || u.rows() == 0)
        throw Error(ErrorCode::DimensionMismatch, "custom basis must be a non-empty square matrix");
    const auto check = verify_unitary(u, tol);
    if (!check.ok) {
        std::ostringstream msg;
        msg << "custom basis is not unitary: ||U^H U - I||_F = " << check.defect << " > " << tol;
        throw Error(ErrorCode::NotUnitary, msg.str());
    }
    return UnitaryBasis(BasisFamily::Custom, std::move(label), {}, std::move(u));
}

UnitaryBasis load_basis(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open basis file " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = detail::split_tokens(detail::strip_comment(line));
        if (!tokens.empty()) rows.push_back(std::move(tokens));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::Parse, path.string() + ": no matrix rows");
    CMatrix u(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& t = rows[r];
        if (t.size() == 2 * n) {
            for (std::size_t c = 0; c < n; ++c)
                u(r, c) = {detail::parse_real(t[2 * c]), detail::parse_real(t[2 * c + 1])};
        } else if (t.size() == n) {
            for (std::size_t c = 0; c < n; ++c) u(r, c) = detail::parse_complex(t[c]);
        } else {
            throw Error(ErrorCode::Parse, path.string() + ": row " + std::to_string(r + 1) + " has " +
                                              std::to_string(t.size()) + " fields, expected " +
                                              std::to_string(n) + " or " + std::to_string(2 * n));
        }
    }
    return basis_custom(std::move(u), 1e-8 * static_cast<double>(n), path.filename().string());
}

}  // namespace isacaf
