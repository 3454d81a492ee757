// SPDX-License-Identifier: Apache-2.0
#include "isacaf/isacaf.h"

#include "isacaf/basis.hpp"
#include "isacaf/constellation.hpp"
#include "isacaf/dpaf.hpp"
#include "isacaf/error.hpp"
#include "isacaf/grid_io.hpp"
#include "isacaf/montecarlo.hpp"
#include "isacaf/rng.hpp"
#include "isacaf/theory.hpp"

#include <new>
#include <string>

#ifndef ISACAF_VERSION_STRING
#define ISACAF_VERSION_STRING "0.0.0"
#endif

struct isacaf_constellation {
    std::shared_ptr<const isacaf::Constellation> ptr;
};
struct isacaf_basis {
    std::shared_ptr<const isacaf::UnitaryBasis> ptr;
};
struct isacaf_dpaf {
    isacaf::DpafGrid grid;
};
struct isacaf_grid {
    isacaf::ExpectationGrid grid;
};

namespace {

using namespace isacaf;

thread_local std::string g_last_error;

template <typename F>
isacaf_status guard(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return ISACAF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<isacaf_status>(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ISACAF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ISACAF_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return ISACAF_ERR_INTERNAL;
    }
}

template <typename T>
void need(const T* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string("null ") + what);
}

void need_capacity(std::size_t capacity, std::size_t required) {
    if (capacity < required)
        throw Error(ErrorCode::InvalidArgument, "output buffer holds " + std::to_string(capacity) + " doubles, need " +
                                                    std::to_string(required));
}

CVector read_complex(const double* re_im, std::size_t n) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {re_im[2 * i], re_im[2 * i + 1]};
    return v;
}

void write_complex(std::span<const cplx> v, double* re_im) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        re_im[2 * i] = v[i].real();
        re_im[2 * i + 1] = v[i].imag();
    }
}

template <typename Make>
isacaf_status make_basis(isacaf_basis** out, Make&& make) {
    return guard([&] {
        need(out, "output handle");
        *out = nullptr;
        auto b = std::make_shared<const UnitaryBasis>(make());
        *out = new isacaf_basis{std::move(b)};
    });
}

template <typename Make>
isacaf_status make_constellation(isacaf_constellation** out, Make&& make) {
    return guard([&] {
        need(out, "output handle");
        *out = nullptr;
        auto c = std::make_shared<const Constellation>(make());
        *out = new isacaf_constellation{std::move(c)};
    });
}

GridFormat to_format(isacaf_grid_format f) { return f == ISACAF_GRID_DENSE ? GridFormat::Dense : GridFormat::Long; }

void fill(isacaf_eisl* out, const EislReport& r) {
    out->total = r.total;
    out->mainlobe = r.mainlobe;
    out->eisl = r.eisl;
    out->normalized = r.normalized;
}

}  // namespace

extern "C" {

const char* isacaf_version(void) { return ISACAF_VERSION_STRING; }

const char* isacaf_last_error(void) { return g_last_error.c_str(); }

const char* isacaf_status_string(isacaf_status status) {
    if (status == ISACAF_OK) return "ok";
    if (status == ISACAF_ERR_INTERNAL) return "internal error";
    return to_string(static_cast<ErrorCode>(status));
}

uint64_t isacaf_trial_seed(uint64_t base, uint64_t trial) { return trial_seed(base, trial); }

uint64_t isacaf_labelled_seed(uint64_t base, const char* label) {
    return labelled_seed(base, label ? std::string_view(label) : std::string_view());
}

// ---- constellations

isacaf_status isacaf_constellation_psk(int order, isacaf_constellation** out) {
    return make_constellation(out, [&] { return make_psk(order); });
}

isacaf_status isacaf_constellation_qam(int order, isacaf_constellation** out) {
    return make_constellation(out, [&] { return make_qam(order); });
}

isacaf_status isacaf_constellation_by_name(const char* name, isacaf_constellation** out) {
    return make_constellation(out, [&] {
        need(name, "name");
        return constellation_from_name(name);
    });
}

isacaf_status isacaf_constellation_from_points(const double* re_im, size_t count, const char* name, int normalize,
                                               isacaf_constellation** out) {
    return make_constellation(out, [&] {
        need(re_im, "points");
        Constellation c(read_complex(re_im, count), name ? name : "custom");
        return normalize ? c.normalized() : c;
    });
}

isacaf_status isacaf_constellation_load(const char* path, int normalize, isacaf_constellation** out) {
    return make_constellation(out, [&] {
        need(path, "path");
        return load_constellation(path, normalize != 0);
    });
}

void isacaf_constellation_free(isacaf_constellation* c) { delete c; }

size_t isacaf_constellation_size(const isacaf_constellation* c) { return c ? c->ptr->size() : 0; }

const char* isacaf_constellation_name(const isacaf_constellation* c) { return c ? c->ptr->name().c_str() : ""; }

isacaf_status isacaf_constellation_points(const isacaf_constellation* c, double* re_im, size_t capacity) {
    return guard([&] {
        need(c, "constellation");
        need(re_im, "output");
        need_capacity(capacity, 2 * c->ptr->size());
        write_complex(c->ptr->points(), re_im);
    });
}

isacaf_status isacaf_constellation_moments(const isacaf_constellation* c, double tol, isacaf_moments* out) {
    return guard([&] {
        need(c, "constellation");
        need(out, "output");
        const MomentReport m = moments(*c->ptr, tol);
        out->mean_re = m.mean.real();
        out->mean_im = m.mean.imag();
        out->power = m.power;
        out->pseudo_variance_re = m.pseudo_variance.real();
        out->pseudo_variance_im = m.pseudo_variance.imag();
        out->kurtosis = m.kurtosis;
        out->fourth_moment = m.fourth_moment;
        out->tolerance = m.tolerance;
        out->assumption1_ok = m.assumption1_ok ? 1 : 0;
    });
}

isacaf_status isacaf_sample_symbols(const isacaf_constellation* c, size_t n, uint64_t seed, double* re_im_out) {
    return guard([&] {
        need(c, "constellation");
        need(re_im_out, "output");
        write_complex(sample_symbols(*c->ptr, n, seed), re_im_out);
    });
}

// ---- bases

isacaf_status isacaf_basis_sc(size_t n, isacaf_basis** out) {
    return make_basis(out, [&] { return basis_sc(n); });
}

isacaf_status isacaf_basis_ofdm(size_t n, isacaf_basis** out) {
    return make_basis(out, [&] { return basis_ofdm(n); });
}

isacaf_status isacaf_basis_otfs(size_t c, size_t l, isacaf_basis** out) {
    return make_basis(out, [&] { return basis_otfs(c, l); });
}

isacaf_status isacaf_basis_afdm(size_t n, double c1, double c2, isacaf_basis** out) {
    return make_basis(out, [&] { return basis_afdm(n, c1, c2); });
}

isacaf_status isacaf_basis_haar(size_t n, uint64_t seed, isacaf_basis** out) {
    return make_basis(out, [&] { return basis_haar(n, seed); });
}

isacaf_status isacaf_basis_from_matrix(size_t n, const double* re_im, double tol, isacaf_basis** out) {
    return make_basis(out, [&] {
        need(re_im, "matrix");
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n * n; ++i) m.data()[i] = {re_im[2 * i], re_im[2 * i + 1]};
        return basis_custom(std::move(m), tol);
    });
}

isacaf_status isacaf_basis_load(const char* path, isacaf_basis** out) {
    return make_basis(out, [&] {
        need(path, "path");
        return load_basis(path);
    });
}

void isacaf_basis_free(isacaf_basis* b) { delete b; }

size_t isacaf_basis_size(const isacaf_basis* b) { return b ? b->ptr->size() : 0; }

isacaf_basis_family isacaf_basis_family_of(const isacaf_basis* b) {
    if (!b) return ISACAF_BASIS_CUSTOM;
    return static_cast<isacaf_basis_family>(b->ptr->family());
}

const char* isacaf_basis_label(const isacaf_basis* b) { return b ? b->ptr->label().c_str() : ""; }

isacaf_status isacaf_basis_matrix(const isacaf_basis* b, double* re_im, size_t capacity) {
    return guard([&] {
        need(b, "basis");
        need(re_im, "output");
        const auto data = b->ptr->matrix().data();
        need_capacity(capacity, 2 * data.size());
        write_complex(data, re_im);
    });
}

isacaf_status isacaf_verify_unitary(size_t n, const double* re_im, double tol, int* ok, double* defect) {
    return guard([&] {
        need(re_im, "matrix");
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n * n; ++i) m.data()[i] = {re_im[2 * i], re_im[2 * i + 1]};
        const auto check = verify_unitary(m, tol);
        if (ok) *ok = check.ok ? 1 : 0;
        if (defect) *defect = check.defect;
    });
}

// ---- realizations

isacaf_status isacaf_modulate(const isacaf_basis* b, const double* symbols, double* signal_out) {
    return guard([&] {
        need(b, "basis");
        need(symbols, "symbols");
        need(signal_out, "output");
        const Waveform w = modulate(b->ptr, read_complex(symbols, b->ptr->size()));
        write_complex(w.signal, signal_out);
    });
}

isacaf_status isacaf_dpaf_point(const isacaf_basis* b, const double* symbols, size_t k, size_t q, double out[2]) {
    return guard([&] {
        need(b, "basis");
        need(symbols, "symbols");
        need(out, "output");
        const Waveform w = modulate(b->ptr, read_complex(symbols, b->ptr->size()));
        const cplx v = dpaf_point(w, k, q);
        out[0] = v.real();
        out[1] = v.imag();
    });
}

isacaf_status isacaf_dpaf_compute(const isacaf_basis* b, const double* symbols, isacaf_dpaf_method method,
                                  isacaf_dpaf** out) {
    return guard([&] {
        need(b, "basis");
        need(symbols, "symbols");
        need(out, "output handle");
        *out = nullptr;
        const Waveform w = modulate(b->ptr, read_complex(symbols, b->ptr->size()));
        *out = new isacaf_dpaf{method == ISACAF_DPAF_NAIVE ? dpaf_grid_naive(w) : dpaf_grid_fft(w)};
    });
}

void isacaf_dpaf_free(isacaf_dpaf* g) { delete g; }

size_t isacaf_dpaf_size(const isacaf_dpaf* g) { return g ? g->grid.size() : 0; }

isacaf_status isacaf_dpaf_values(const isacaf_dpaf* g, double* re_im, size_t capacity) {
    return guard([&] {
        need(g, "grid");
        need(re_im, "output");
        need_capacity(capacity, 2 * g->grid.values().size());
        write_complex(g->grid.values(), re_im);
    });
}

isacaf_status isacaf_dpaf_write_csv(const isacaf_dpaf* g, const char* path, isacaf_grid_format fmt) {
    return guard([&] {
        need(g, "grid");
        need(path, "path");
        save_dpaf_csv(path, g->grid, to_format(fmt));
    });
}

// ---- closed forms

isacaf_status isacaf_theory_grid(const isacaf_basis* b, double mu4, isacaf_theory_method method, isacaf_grid** out) {
    return guard([&] {
        need(b, "basis");
        need(out, "output handle");
        *out = nullptr;
        const TheoryInputs t(b->ptr, mu4);
        *out = new isacaf_grid{method == ISACAF_THEORY_GENERAL ? avg_grid_general(t) : avg_grid_fast(t)};
    });
}

isacaf_status isacaf_theory_zero_doppler(const isacaf_basis* b, double mu4, size_t k, double* out) {
    return guard([&] {
        need(b, "basis");
        need(out, "output");
        *out = avg_zero_doppler(TheoryInputs(b->ptr, mu4), k);
    });
}

isacaf_status isacaf_theory_zero_delay(const isacaf_basis* b, double mu4, size_t q, double* out) {
    return guard([&] {
        need(b, "basis");
        need(out, "output");
        *out = avg_zero_delay(TheoryInputs(b->ptr, mu4), q);
    });
}

isacaf_status isacaf_theory_sidelobe(const isacaf_basis* b, double mu4, size_t k, size_t q, double* out) {
    return guard([&] {
        need(b, "basis");
        need(out, "output");
        *out = avg_sidelobe(TheoryInputs(b->ptr, mu4), k, q);
    });
}

isacaf_status isacaf_theory_mainlobe(size_t n, double mu4, double* out) {
    return guard([&] {
        need(out, "output");
        *out = avg_mainlobe(n, mu4);
    });
}

isacaf_status isacaf_theory_bounds(size_t n, double mu4, double* lower, double* upper) {
    return guard([&] {
        need(lower, "lower");
        need(upper, "upper");
        const auto [lo, hi] = sidelobe_bounds(n, mu4);
        *lower = lo;
        *upper = hi;
    });
}

isacaf_status isacaf_theory_eisl(const isacaf_basis* b, double mu4, isacaf_eisl* out) {
    return guard([&] {
        need(b, "basis");
        need(out, "output");
        fill(out, eisl(TheoryInputs(b->ptr, mu4)));
    });
}

isacaf_status isacaf_theory_eisl_analytic(size_t n, double mu4, isacaf_eisl* out) {
    return guard([&] {
        need(out, "output");
        fill(out, eisl_analytic(n, mu4));
    });
}

// ---- Monte Carlo and enumeration

isacaf_status isacaf_mc_grid(const isacaf_basis* b, const isacaf_constellation* c, const isacaf_mc_options* opts,
                             isacaf_grid** out, isacaf_mc_summary* summary) {
    return guard([&] {
        need(b, "basis");
        need(c, "constellation");
        need(opts, "options");
        need(out, "output handle");
        *out = nullptr;
        McConfig cfg;
        cfg.trials = opts->trials;
        cfg.seed = opts->seed;
        cfg.threads = opts->threads;
        cfg.basis = b->ptr;
        cfg.constellation = c->ptr;
        McResult r = run_monte_carlo(cfg);
        if (summary) {
            auto put = [](isacaf_trial_stat& dst, const TrialStat& src) {
                dst.mean = src.mean;
                dst.std_error = src.std_error;
            };
            put(summary->normalized_eisl, r.summary.normalized_eisl);
            put(summary->mainlobe, r.summary.mainlobe);
            put(summary->zero_doppler_mean, r.summary.zero_doppler_mean);
            put(summary->zero_delay_mean, r.summary.zero_delay_mean);
        }
        *out = new isacaf_grid{std::move(r.grid)};
    });
}

isacaf_status isacaf_exact_grid(const isacaf_basis* b, const isacaf_constellation* c, size_t budget,
                                isacaf_grid** out) {
    return guard([&] {
        need(b, "basis");
        need(c, "constellation");
        need(out, "output handle");
        *out = nullptr;
        *out = new isacaf_grid{exact_avg_grid(*b->ptr, *c->ptr, budget ? budget : kDefaultEnumerationBudget)};
    });
}

isacaf_status isacaf_compare_grids(const isacaf_grid* a, const isacaf_grid* b, double floor, isacaf_comparison* out) {
    return guard([&] {
        need(a, "grid a");
        need(b, "grid b");
        need(out, "output");
        const double fl = floor < 0.0 ? default_relative_floor(b->grid.n) : floor;
        const GridComparison r = compare_grids(a->grid, b->grid, fl);
        out->max_abs = r.max_abs;
        out->max_rel = r.max_rel;
        out->rms = r.rms;
        out->rel_cells = r.rel_cells;
        out->has_z = r.has_z() ? 1 : 0;
        out->max_abs_z = r.max_abs_z;
        out->cells = a->grid.values.size();
        out->cells_beyond_3 = r.cells_beyond_3;
        out->cells_beyond_4 = r.cells_beyond_4;
    });
}

// ---- expectation grids

void isacaf_grid_free(isacaf_grid* g) { delete g; }

size_t isacaf_grid_size(const isacaf_grid* g) { return g ? g->grid.n : 0; }

isacaf_provenance isacaf_grid_provenance(const isacaf_grid* g) {
    return g ? static_cast<isacaf_provenance>(g->grid.provenance) : ISACAF_PROVENANCE_CLOSED_FORM_GENERAL;
}

const char* isacaf_provenance_name(isacaf_provenance p) { return to_string(static_cast<Provenance>(p)); }

size_t isacaf_grid_trials(const isacaf_grid* g) { return g ? g->grid.trials : 0; }

int isacaf_grid_has_std_errors(const isacaf_grid* g) { return g && g->grid.has_std_errors() ? 1 : 0; }

isacaf_status isacaf_grid_values(const isacaf_grid* g, double* out, size_t capacity) {
    return guard([&] {
        need(g, "grid");
        need(out, "output");
        need_capacity(capacity, g->grid.values.size());
        std::copy(g->grid.values.begin(), g->grid.values.end(), out);
    });
}

isacaf_status isacaf_grid_std_errors(const isacaf_grid* g, double* out, size_t capacity) {
    return guard([&] {
        need(g, "grid");
        need(out, "output");
        if (!g->grid.has_std_errors()) throw Error(ErrorCode::InvalidArgument, "grid carries no standard errors");
        need_capacity(capacity, g->grid.std_errors.size());
        std::copy(g->grid.std_errors.begin(), g->grid.std_errors.end(), out);
    });
}

isacaf_status isacaf_grid_eisl(const isacaf_grid* g, isacaf_eisl* out) {
    return guard([&] {
        need(g, "grid");
        need(out, "output");
        fill(out, eisl_of_grid(g->grid));
    });
}

isacaf_status isacaf_grid_write_csv(const isacaf_grid* g, const char* path, isacaf_grid_format fmt) {
    return guard([&] {
        need(g, "grid");
        need(path, "path");
        save_expectation_csv(path, g->grid, to_format(fmt));
    });
}

isacaf_status isacaf_grid_read_csv(const char* path, isacaf_grid** out) {
    return guard([&] {
        need(path, "path");
        need(out, "output handle");
        *out = nullptr;
        *out = new isacaf_grid{load_expectation_csv(path)};
    });
}

}  // extern "C"
