// SPDX-License-Identifier: Apache-2.0
//
// Modulation bases and the two fixed operators the ambiguity analysis is
// built from: the normalized DFT matrix F and the periodic shift J_k.
//
// Index convention: storage is 0-based throughout. A 1-based column f_{q+1}
// of F is storage column q, and J_k (block form [[0, I_k], [I_{N-k}, 0]])
// acts as (J_k x)[i] = x[(i - k) mod N].
#pragma once

#include "isacaf/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace isacaf {

enum class BasisFamily { SC, OFDM, OTFS, AFDM, Custom };

const char* to_string(BasisFamily f) noexcept;

struct BasisParams {
    std::size_t otfs_c = 0;  // Doppler bins
    std::size_t otfs_l = 0;  // delay bins
    double afdm_c1 = 0.0;
    double afdm_c2 = 0.0;
    std::uint64_t seed = 0;  // Haar draws only
};

/// N x N unitary modulation matrix U; columns u_n are the signalling
/// vectors. Immutable after construction.
class UnitaryBasis {
public:
    UnitaryBasis(BasisFamily family, std::string label, BasisParams params, CMatrix matrix);

    BasisFamily family() const noexcept { return family_; }
    /// Short human label: "SC", "OFDM", "OTFS(C=4,L=32)", "Haar(seed=1)", ...
    const std::string& label() const noexcept { return label_; }
    const BasisParams& params() const noexcept { return params_; }
    std::size_t size() const noexcept { return matrix_.rows(); }
    const CMatrix& matrix() const noexcept { return matrix_; }
    std::span<const cplx> column(std::size_t n) const { return matrix_.col(n); }

private:
    BasisFamily family_;
    std::string label_;
    BasisParams params_;
    CMatrix matrix_;
};

/// (F_N)_{m,n} = e^{-j 2 pi m n / N} / sqrt(N), 0-based.
cplx dft_entry(std::size_t n_size, std::size_t m, std::size_t n);

class DftMatrix {
public:
    explicit DftMatrix(std::size_t n);

    std::size_t size() const noexcept { return matrix_.rows(); }
    const CMatrix& matrix() const noexcept { return matrix_; }
    /// Storage column q, i.e. f_{q+1}.
    std::span<const cplx> column(std::size_t q) const { return matrix_.col(q); }
    CVector apply(std::span<const cplx> x) const { return matrix_ * x; }

private:
    CMatrix matrix_;
};

DftMatrix dft_matrix(std::size_t n);

/// Delay index k of J_k. Range is checked against the vector length when
/// it is applied.
struct ShiftIndex {
    std::size_t k = 0;
};

/// (J_k x)[i] = x[(i - k) mod N]. Rejects k >= N.
CVector apply_shift(std::span<const cplx> x, ShiftIndex k);

/// Dense J_k; only meant for identity checks on small N.
CMatrix shift_matrix_dense(std::size_t n, ShiftIndex k);

UnitaryBasis basis_sc(std::size_t n);
UnitaryBasis basis_ofdm(std::size_t n);
/// U = F_C^H kron I_L, N = C * L.
UnitaryBasis basis_otfs(std::size_t c, std::size_t l);
/// U = Lambda_{c1}^H F_N^H Lambda_{c2}^H, Lambda_c = Diag(e^{-j 2 pi c n^2}).
/// Requires even N and integer 2 N c1.
UnitaryBasis basis_afdm(std::size_t n, double c1, double c2);
/// Haar-distributed unitary: Gram-Schmidt of an i.i.d. complex Gaussian matrix.
UnitaryBasis basis_haar(std::size_t n, std::uint64_t seed);
/// Wraps a caller matrix; throws NotUnitary if the defect exceeds tol.
UnitaryBasis basis_custom(CMatrix u, double tol, std::string label = "Custom");

struct UnitarityCheck {
    bool ok = false;
    double defect = 0.0;  // ||U^H U - I||_F
};

UnitarityCheck verify_unitary(const CMatrix& u, double tol);

/// N rows of N entries, either "re im" pairs (2N tokens) or complex
/// literals like "0.5-0.25j" (N tokens). Rejected unless unitary at 1e-8 N.
UnitaryBasis load_basis(const std::filesystem::path& path);

}  // namespace isacaf
