// SPDX-License-Identifier: Apache-2.0
#include "isacaf/fft.hpp"

#include "isacaf/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace isacaf {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        fftw_free(in);
        fftw_free(out);
    }
};

Fft::Fft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "FFT length must be positive");
    std::lock_guard lock(planner_mutex());
    impl_->in = fftw_alloc_complex(n);
    impl_->out = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    impl_->fwd = fftw_plan_dft_1d(len, impl_->in, impl_->out, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_1d(len, impl_->in, impl_->out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->inv) throw Error(ErrorCode::InvalidArgument, "FFTW planning failed");
}

Fft::~Fft() = default;

namespace {
void run(fftw_plan plan, fftw_complex* buf_in, fftw_complex* buf_out, std::size_t n,
         std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != n || out.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "FFT buffer length differs from plan length");
    std::copy(in.begin(), in.end(), reinterpret_cast<cplx*>(buf_in));
    fftw_execute(plan);
    const auto* res = reinterpret_cast<const cplx*>(buf_out);
    std::copy(res, res + n, out.begin());
}
}  // namespace

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) {
    run(impl_->fwd, impl_->in, impl_->out, n_, in, out);
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) {
    run(impl_->inv, impl_->in, impl_->out, n_, in, out);
}

Fft& fft_for(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Fft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft>(n);
    return *slot;
}

}  // namespace isacaf
