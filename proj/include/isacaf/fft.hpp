// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isacaf/matrix.hpp"

#include <memory>
#include <span>

namespace isacaf {

/// Unnormalized length-N DFT pair backed by FFTW:
///   forward: X[m] = sum_n x[n] e^{-j 2 pi m n / N}
///   inverse: x[n] = sum_m X[m] e^{+j 2 pi m n / N}   (no 1/N)
/// Plans are built with FFTW_ESTIMATE so results do not depend on timing.
/// An instance is not thread-safe; use one per thread (see fft_for).
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<const cplx> in, std::span<cplx> out);
    void inverse(std::span<const cplx> in, std::span<cplx> out);

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

/// Thread-local cached transform of length n.
Fft& fft_for(std::size_t n);

}  // namespace isacaf
