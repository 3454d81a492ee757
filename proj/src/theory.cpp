// SPDX-License-Identifier: Apache-2.0
#include "isacaf/theory.hpp"

#include "isacaf/dpaf.hpp"
#include "isacaf/error.hpp"
#include "isacaf/fft.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace isacaf {

namespace {

void require_range(std::size_t idx, std::size_t n, const char* what) {
    if (idx >= n)
        throw Error(ErrorCode::IndexOutOfRange,
                    std::string(what) + " " + std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
}

void require_off_axis(std::size_t idx, const char* what, const char* hint) {
    if (idx == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " = 0 is not a sidelobe; " + hint);
}

// w[r] = e^{-j 2 pi r / N}
CVector twiddles(std::size_t n) {
    CVector w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = dft_entry(n, 1, r) * std::sqrt(static_cast<double>(n));
    return w;
}

}  // namespace

TheoryInputs::TheoryInputs(std::shared_ptr<const UnitaryBasis> basis, double mu4)
    : basis_(std::move(basis)), mu4_(mu4) {
    if (!basis_) throw Error(ErrorCode::InvalidArgument, "theory: null basis");
    if (!std::isfinite(mu4_) || mu4_ < 1.0) {
        std::ostringstream msg;
        msg << "kurtosis must be >= 1, got " << mu4_;
        throw Error(ErrorCode::InvalidKurtosis, msg.str());
    }
    // V = U^H F^H = (F U)^H; columns of F U are DFTs of the basis columns.
    const std::size_t n = basis_->size();
    Fft& fft = fft_for(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVector col(n);
    v_ = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        fft.forward(basis_->column(i), col);
        for (std::size_t r = 0; r < n; ++r) v_(i, r) = std::conj(col[r]) * scale;
    }
}

TheoryInputs TheoryInputs::from_moments(std::shared_ptr<const UnitaryBasis> basis, const MomentReport& m,
                                        bool force) {
    if (!m.assumption1_ok && !force)
        throw Error(ErrorCode::AssumptionViolated,
                    "constellation is not zero-mean, unit-power and zero-pseudo-variance; "
                    "closed forms do not apply (force to evaluate anyway)");
    TheoryInputs t(std::move(basis), m.kurtosis);
    t.forced_ = !m.assumption1_ok;
    return t;
}

double avg_mainlobe(std::size_t n, double mu4) {
    if (!std::isfinite(mu4) || mu4 < 1.0) throw Error(ErrorCode::InvalidKurtosis, "kurtosis must be >= 1");
    const double nn = static_cast<double>(n);
    return nn * nn + (mu4 - 1.0) * nn;
}

ExpectationGrid avg_grid_general(const TheoryInputs& t) {
    const std::size_t n = t.size();
    const double nn = static_cast<double>(n);
    const CMatrix& v = t.v();
    const CVector w = twiddles(n);

    // hadamard(k, q) = sum_{n,m} 1^T(v_{n-q} . v_n^* . v_{m-q}^* . v_m) w^{k(n-m)}
    //                = sum_i | sum_n v_{n-q}[i] v_n[i]^* w^{kn} |^2
    std::vector<double> hadamard(n * n, 0.0);
    CVector a(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n; ++c) a[c] = v(i, (c + n - q) % n) * std::conj(v(i, c));
            for (std::size_t k = 0; k < n; ++k) {
                cplx acc{};
                for (std::size_t c = 0; c < n; ++c) acc += a[c] * w[(k * c) % n];
                hadamard[k * n + q] += std::norm(acc);
            }
        }
    }

    ExpectationGrid g(n, Provenance::ClosedFormGeneral);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
            const double first = nn;  // sum_{n,m} delta_{m,n} w^{k(n-m)} = N
            const double third = (q == 0 && k == 0) ? nn * nn : 0.0;  // delta_{q,0} |sum_n w^{kn}|^2
            g.at(k, q) = first + (t.mu4() - 2.0) * hadamard[k * n + q] + third;
        }
    return g;
}

ExpectationGrid avg_grid_fast(const TheoryInputs& t) {
    const std::size_t n = t.size();
    const double nn = static_cast<double>(n);
    std::vector<double> acc(n * n, 0.0);
    std::vector<double> sq(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        dpaf_sq_grid_fft(t.basis().column(i), sq);
        for (std::size_t c = 0; c < n * n; ++c) acc[c] += sq[c];
    }
    ExpectationGrid g(n, Provenance::ClosedFormFast);
    for (std::size_t c = 0; c < n * n; ++c) g.values[c] = nn + (t.mu4() - 2.0) * acc[c];
    g.at(0, 0) += nn * nn;
    return g;
}

cplx shift_overlap(std::span<const cplx> u, std::size_t k) {
    const std::size_t n = u.size();
    require_range(k, n, "delay");
    cplx acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::conj(u[r]) * u[(r + n - k) % n];
    return acc;
}

cplx doppler_overlap(std::span<const cplx> u, std::size_t q) {
    const std::size_t n = u.size();
    require_range(q, n, "Doppler");
    cplx acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::norm(u[r]) * dft_entry(n, r, q);
    return acc;
}

cplx delay_doppler_overlap(std::span<const cplx> u, std::size_t k, std::size_t q) {
    const std::size_t n = u.size();
    require_range(k, n, "delay");
    require_range(q, n, "Doppler");
    cplx acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::conj(u[r]) * dft_entry(n, r, q) * u[(r + n - k) % n];
    return acc;
}

double avg_zero_doppler(const TheoryInputs& t, std::size_t k) {
    const std::size_t n = t.size();
    require_range(k, n, "delay");
    require_off_axis(k, "k", "request the mainlobe via avg_mainlobe");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(shift_overlap(t.basis().column(i), k));
    return static_cast<double>(n) + (t.mu4() - 2.0) * acc;
}

double avg_zero_delay(const TheoryInputs& t, std::size_t q) {
    const std::size_t n = t.size();
    require_range(q, n, "Doppler");
    require_off_axis(q, "q", "request the mainlobe via avg_mainlobe");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(doppler_overlap(t.basis().column(i), q));
    const double nn = static_cast<double>(n);
    return nn + (t.mu4() - 2.0) * nn * acc;
}

double avg_sidelobe(const TheoryInputs& t, std::size_t k, std::size_t q) {
    const std::size_t n = t.size();
    require_range(k, n, "delay");
    require_range(q, n, "Doppler");
    require_off_axis(k, "k", "use avg_zero_delay for the k = 0 slice");
    require_off_axis(q, "q", "use avg_zero_doppler for the q = 0 slice");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(delay_doppler_overlap(t.basis().column(i), k, q));
    const double nn = static_cast<double>(n);
    return nn + (t.mu4() - 2.0) * nn * acc;
}

EislReport eisl_of_grid(const ExpectationGrid& g) {
    EislReport r;
    for (double v : g.values) r.total += v;
    r.mainlobe = g.values.empty() ? 0.0 : g.at(0, 0);
    r.eisl = r.total - r.mainlobe;
    r.normalized = r.mainlobe != 0.0 ? r.eisl / r.mainlobe : 0.0;
    return r;
}

EislReport eisl(const TheoryInputs& t) { return eisl_of_grid(avg_grid_fast(t)); }

EislReport eisl_analytic(std::size_t n, double mu4) {
    const double nn = static_cast<double>(n);
    EislReport r;
    r.mainlobe = avg_mainlobe(n, mu4);
    r.total = nn * nn * nn + (mu4 - 1.0) * nn * nn;
    r.eisl = r.total - r.mainlobe;
    r.normalized = r.eisl / r.mainlobe;
    return r;
}

std::pair<double, double> sidelobe_bounds(std::size_t n, double mu4) {
    if (!std::isfinite(mu4) || mu4 < 1.0 || mu4 > 2.0) {
        std::ostringstream msg;
        msg << "sidelobe interval is only established for 1 <= mu4 <= 2, got " << mu4;
        throw Error(ErrorCode::InvalidKurtosis, msg.str());
    }
    const double nn = static_cast<double>(n);
    return {(mu4 - 1.0) * nn, nn};
}

double SDecomposition::s(std::size_t row, std::size_t col) const {
    const std::size_t nsq = n * n;
    double v = s2[row * nsq + col];
    if (row == col) v += 1.0 + s1_diag[row];
    return v;
}

SDecomposition s_decomposition(std::size_t n, double mu4) {
    if (n == 0 || n > 16) throw Error(ErrorCode::BudgetExceeded, "dense S decomposition limited to 1 <= N <= 16");
    const std::size_t nsq = n * n;
    SDecomposition d;
    d.n = n;
    d.s1_diag.assign(nsq, 0.0);
    d.g.assign(nsq, 0.0);
    d.s2.assign(nsq * nsq, 0.0);
    // vec(ss^H) position of s_a^* s_a is a N + a = a (N + 1).
    for (std::size_t a = 0; a < n; ++a) {
        d.s1_diag[a * (n + 1)] = mu4 - 2.0;
        d.g[a * (n + 1)] = 1.0;
    }
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t col = a * (n + 1);
        for (std::size_t r = 0; r < nsq; ++r) d.s2[r * nsq + col] = d.g[r];
    }
    return d;
}

SMatrixTerms s_matrix_terms(const TheoryInputs& t, std::size_t k, std::size_t q, std::size_t m, std::size_t n) {
    const std::size_t sz = t.size();
    if (sz > 16) throw Error(ErrorCode::BudgetExceeded, "s_matrix_terms is limited to N <= 16");
    require_range(k, sz, "delay");
    require_range(q, sz, "Doppler");
    require_range(m, sz, "m");
    require_range(n, sz, "n");

    const SDecomposition d = s_decomposition(sz, t.mu4());
    const CMatrix& v = t.v();
    const std::size_t nq = (n + sz - q) % sz;
    const std::size_t mq = (m + sz - q) % sz;
    const std::size_t nsq = sz * sz;

    // left = v_{n-q}^T kron v_n^H, right = v_{m-q}^* kron v_m
    CVector left(nsq), right(nsq);
    for (std::size_t a = 0; a < sz; ++a)
        for (std::size_t b = 0; b < sz; ++b) {
            left[a * sz + b] = v(a, nq) * std::conj(v(b, n));
            right[a * sz + b] = std::conj(v(a, mq)) * v(b, m);
        }

    SMatrixTerms out;
    for (std::size_t r = 0; r < nsq; ++r) {
        out.term1 += left[r] * right[r];
        out.term2 += left[r] * d.s1_diag[r] * right[r];
        cplx row{};
        for (std::size_t c = 0; c < nsq; ++c) {
            const double s2 = d.s2[r * nsq + c];
            if (s2 != 0.0) row += s2 * right[c];
        }
        out.term3 += left[r] * row;
    }
    for (std::size_t a = 0; a < sz; ++a)
        out.hadamard += v(a, nq) * std::conj(v(a, n)) * std::conj(v(a, mq)) * v(a, m);
    out.hadamard *= t.mu4() - 2.0;

    const long diff = static_cast<long>(n) - static_cast<long>(m);
    const auto r = static_cast<std::size_t>(((static_cast<long>(k) * diff) % static_cast<long>(sz) +
                                             static_cast<long>(sz)) %
                                            static_cast<long>(sz));
    out.phase = dft_entry(sz, 1, r) * std::sqrt(static_cast<double>(sz));
    return out;
}

}  // namespace isacaf
