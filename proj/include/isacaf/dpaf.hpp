// SPDX-License-Identifier: Apache-2.0
//
// Discrete periodic ambiguity function of one realized waveform:
//
//   X(k, q) = sqrt(N) x^H J_k^H Diag(f*_{q+1}) x
//           = sum_i x[i] conj(x[(i - k) mod N]) e^{+j 2 pi i q / N}
//
// k is the delay (grid row), q the Doppler bin (grid column), both 0..N-1.
#pragma once

#include "isacaf/basis.hpp"
#include "isacaf/matrix.hpp"

#include <memory>
#include <vector>

namespace isacaf {

struct Waveform {
    CVector symbols;
    CVector signal;
    std::shared_ptr<const UnitaryBasis> basis;

    std::size_t size() const noexcept { return signal.size(); }
};

/// x = U s.
Waveform modulate(std::shared_ptr<const UnitaryBasis> basis, CVector symbols);

/// Complex N x N grid, row-major with k as the row.
class DpafGrid {
public:
    explicit DpafGrid(std::size_t n) : n_(n), values_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    cplx& at(std::size_t k, std::size_t q) { return values_[k * n_ + q]; }
    const cplx& at(std::size_t k, std::size_t q) const { return values_[k * n_ + q]; }
    double sq(std::size_t k, std::size_t q) const { return std::norm(at(k, q)); }

    /// |X(k,q)|^2 for every cell, same layout.
    std::vector<double> squared() const;
    std::span<const cplx> values() const noexcept { return values_; }

private:
    std::size_t n_;
    CVector values_;
};

/// O(N) direct sum for one cell.
cplx dpaf_point(std::span<const cplx> x, std::size_t k, std::size_t q);
inline cplx dpaf_point(const Waveform& w, std::size_t k, std::size_t q) { return dpaf_point(w.signal, k, q); }

/// Every cell through dpaf_point, O(N^3). Reference path.
DpafGrid dpaf_grid_naive(std::span<const cplx> x);
inline DpafGrid dpaf_grid_naive(const Waveform& w) { return dpaf_grid_naive(w.signal); }

/// O(N^2 log N). With Xf = FFT(x), column q of the grid is
/// IFFT(Xf[(m - q) mod N] * conj(Xf[m])) / N, a circular cross-correlation of
/// the Doppler-modulated x with x.
DpafGrid dpaf_grid_fft(std::span<const cplx> x);
inline DpafGrid dpaf_grid_fft(const Waveform& w) { return dpaf_grid_fft(w.signal); }

/// |X|^2 for every cell via the FFT path, written into out (size N*N,
/// row-major). Avoids keeping the complex grid around in hot loops.
void dpaf_sq_grid_fft(std::span<const cplx> x, std::span<double> out);

/// |X(0,0)|^2 = ||x||_2^4.
double mainlobe_sq(const Waveform& w);

}  // namespace isacaf
