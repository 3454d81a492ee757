// SPDX-License-Identifier: Apache-2.0
//
// Closed-form expectations of |X(k,q)|^2 for x = U s with i.i.d. symbols of
// zero mean, unit power, zero pseudo-variance and kurtosis mu4.
//
// With V = U^H F^H (columns v_n) the general cell is
//
//   E|X(k,q)|^2 = sum_{n,m} delta_{m,n} w^{k(n-m)}
//               + (mu4 - 2) sum_{n,m} 1^T(v_{n-q} . v_n^* . v_{m-q}^* . v_m) w^{k(n-m)}
//               + sum_{n,m} delta_{q,0} w^{k(n-m)},          w = e^{-j 2 pi / N}
//
// (indices mod N). The first sum is N for every k and the last is N^2 at
// (0,0) only. Every sidelobe reduces to
//
//   E|X(k,q)|^2 = N + (mu4 - 2) sum_i |X_{u_i}(k,q)|^2
//
// where X_{u_i} is the deterministic ambiguity function of basis column u_i;
// that identity is the fast path.
#pragma once

#include "isacaf/basis.hpp"
#include "isacaf/constellation.hpp"
#include "isacaf/grid.hpp"

#include <memory>
#include <utility>

namespace isacaf {

class TheoryInputs {
public:
    /// mu4 must be finite and >= 1.
    TheoryInputs(std::shared_ptr<const UnitaryBasis> basis, double mu4);

    /// Takes mu4 from the moment report. Throws AssumptionViolated when the
    /// constellation is not zero-mean/unit-power/zero-pseudo-variance unless
    /// force is set, in which case forced() reports it.
    static TheoryInputs from_moments(std::shared_ptr<const UnitaryBasis> basis, const MomentReport& m,
                                     bool force = false);

    std::size_t size() const noexcept { return basis_->size(); }
    double mu4() const noexcept { return mu4_; }
    bool forced() const noexcept { return forced_; }
    const UnitaryBasis& basis() const noexcept { return *basis_; }
    const std::shared_ptr<const UnitaryBasis>& basis_ptr() const noexcept { return basis_; }
    /// V = U^H F^H.
    const CMatrix& v() const noexcept { return v_; }

private:
    std::shared_ptr<const UnitaryBasis> basis_;
    double mu4_;
    bool forced_ = false;
    CMatrix v_;
};

/// Three-term closed form evaluated cell by cell, O(N^4). Reference path.
ExpectationGrid avg_grid_general(const TheoryInputs& t);

/// Mainlobe plus per-column deterministic ambiguity functions, O(N^3 log N).
ExpectationGrid avg_grid_fast(const TheoryInputs& t);

/// Zero-Doppler slice, 1 <= k < N: N + (mu4 - 2) sum_i |u_i^H J_k u_i|^2.
double avg_zero_doppler(const TheoryInputs& t, std::size_t k);

/// Zero-delay slice, 1 <= q < N: N + (mu4 - 2) N sum_i |u_i^H Diag(f_{q+1}) u_i|^2.
double avg_zero_delay(const TheoryInputs& t, std::size_t q);

/// Off-axis sidelobe, 1 <= k, q < N: N + (mu4 - 2) N sum_i |u_i^H Diag(f_{q+1}) J_k u_i|^2.
double avg_sidelobe(const TheoryInputs& t, std::size_t k, std::size_t q);

/// E||x||^4 = N^2 + (mu4 - 1) N.
double avg_mainlobe(std::size_t n, double mu4);

/// u^H J_k u
cplx shift_overlap(std::span<const cplx> u, std::size_t k);
/// u^H Diag(f_{q+1}) u
cplx doppler_overlap(std::span<const cplx> u, std::size_t q);
/// u^H Diag(f_{q+1}) J_k u
cplx delay_doppler_overlap(std::span<const cplx> u, std::size_t k, std::size_t q);

struct EislReport {
    double total = 0.0;     // sum over all (k,q)
    double mainlobe = 0.0;  // (0,0)
    double eisl = 0.0;      // total - mainlobe
    double normalized = 0.0;  // eisl / mainlobe
};

/// Sums the fast closed-form grid.
EislReport eisl(const TheoryInputs& t);
EislReport eisl_of_grid(const ExpectationGrid& g);
/// total = N^3 + (mu4 - 1) N^2, mainlobe = N^2 + (mu4 - 1) N.
EislReport eisl_analytic(std::size_t n, double mu4);

/// ((mu4 - 1) N, N). Only stated for 1 <= mu4 <= 2; anything else throws.
std::pair<double, double> sidelobe_bounds(std::size_t n, double mu4);

/// Dense pieces of S = E[vec(ss^H) vec(ss^H)^H] = I + S1 + S2 for an N-point
/// symbol vector; N <= 16.
struct SDecomposition {
    std::size_t n = 0;
    std::vector<double> s1_diag;  // N^2 entries: mu4 - 2 at positions a(N+1)
    std::vector<double> s2;       // N^2 x N^2, row-major; column a(N+1) equals g
    std::vector<double> g;        // N^2 entries: 1 at positions a(N+1)

    double s(std::size_t row, std::size_t col) const;  // entry of I + S1 + S2
};

SDecomposition s_decomposition(std::size_t n, double mu4);

struct SMatrixTerms {
    cplx term1;     // (v_{n-q}^T kron v_n^H) I (v*_{m-q} kron v_m)   = delta_{m,n}
    cplx term2;     // ... S1 ...                                    = (mu4-2) 1^T(Hadamard)
    cplx term3;     // ... S2 ...                                    = delta_{q,0}
    cplx hadamard;  // (mu4 - 2) 1^T(v_{n-q} . v_n^* . v_{m-q}^* . v_m), computed directly
    cplx phase;     // e^{-j 2 pi k (n - m) / N}
};

/// Bilinear forms of the dense S decomposition for one (k, q, m, n), all
/// 0-based. Test utility; N > 16 throws BudgetExceeded.
SMatrixTerms s_matrix_terms(const TheoryInputs& t, std::size_t k, std::size_t q, std::size_t m,
                            std::size_t n);

}  // namespace isacaf
