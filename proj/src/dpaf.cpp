// SPDX-License-Identifier: Apache-2.0
#include "isacaf/dpaf.hpp"

#include "isacaf/error.hpp"
#include "isacaf/fft.hpp"

#include <cmath>
#include <numbers>

namespace isacaf {

Waveform modulate(std::shared_ptr<const UnitaryBasis> basis, CVector symbols) {
    if (!basis) throw Error(ErrorCode::InvalidArgument, "modulate: null basis");
    if (symbols.size() != basis->size())
        throw Error(ErrorCode::DimensionMismatch, "modulate: symbol count " + std::to_string(symbols.size()) +
                                                      " != basis size " + std::to_string(basis->size()));
    Waveform w;
    w.signal = basis->matrix() * std::span<const cplx>(symbols);
    w.symbols = std::move(symbols);
    w.basis = std::move(basis);
    return w;
}

std::vector<double> DpafGrid::squared() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::norm(values_[i]);
    return out;
}

cplx dpaf_point(std::span<const cplx> x, std::size_t k, std::size_t q) {
    const std::size_t n = x.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "dpaf_point: empty signal");
    if (k >= n || q >= n)
        throw Error(ErrorCode::IndexOutOfRange, "dpaf_point: (k, q) outside [0, N)");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = (i * q) % n;
        const cplx twiddle = r == 0 ? cplx{1.0, 0.0} : std::polar(1.0, step * static_cast<double>(r));
        acc += x[i] * std::conj(x[(i + n - k) % n]) * twiddle;
    }
    return acc;
}

DpafGrid dpaf_grid_naive(std::span<const cplx> x) {
    const std::size_t n = x.size();
    DpafGrid g(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) g.at(k, q) = dpaf_point(x, k, q);
    return g;
}

namespace {

// Calls sink(q, column) with the length-N delay profile for each Doppler q.
template <typename Sink>
void for_each_doppler_column(std::span<const cplx> x, Sink&& sink) {
    const std::size_t n = x.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "dpaf grid: empty signal");
    Fft& fft = fft_for(n);
    CVector spec(n), prod(n), col(n);
    fft.forward(x, spec);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t m = 0; m < n; ++m) prod[m] = spec[(m + n - q) % n] * std::conj(spec[m]);
        fft.inverse(prod, col);
        for (auto& v : col) v *= inv_n;
        sink(q, col);
    }
}

}  // namespace

DpafGrid dpaf_grid_fft(std::span<const cplx> x) {
    DpafGrid g(x.size());
    for_each_doppler_column(x, [&](std::size_t q, const CVector& col) {
        for (std::size_t k = 0; k < col.size(); ++k) g.at(k, q) = col[k];
    });
    return g;
}

void dpaf_sq_grid_fft(std::span<const cplx> x, std::span<double> out) {
    const std::size_t n = x.size();
    if (out.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "dpaf_sq_grid_fft: output size");
    for_each_doppler_column(x, [&](std::size_t q, const CVector& col) {
        for (std::size_t k = 0; k < n; ++k) out[k * n + q] = std::norm(col[k]);
    });
}

double mainlobe_sq(const Waveform& w) {
    const double e = norm2_squared(w.signal);
    return e * e;
}

}  // namespace isacaf
