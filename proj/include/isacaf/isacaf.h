/* SPDX-License-Identifier: Apache-2.0 */
/*
 * isacaf C API.
 *
 * Discrete periodic ambiguity functions of randomly modulated waveforms:
 * realized grids, closed-form expectations, Monte Carlo and exact
 * enumeration. All objects are opaque handles released with the matching
 * *_free function. Every fallible call returns an isacaf_status; on failure
 * isacaf_last_error() holds a message for the calling thread.
 *
 * Complex arrays are interleaved (re, im) doubles. Grids are row-major N x N
 * with the delay index k as the row and the Doppler index q as the column.
 * Matrices are column-major.
 */
#ifndef ISACAF_H
#define ISACAF_H

#include <stddef.h>
#include <stdint.h>

#if defined(ISACAF_BUILDING_LIBRARY)
#define ISACAF_API __attribute__((visibility("default")))
#else
#define ISACAF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isacaf_status {
    ISACAF_OK = 0,
    ISACAF_ERR_INVALID_ARGUMENT = 1,
    ISACAF_ERR_INVALID_ORDER = 2,
    ISACAF_ERR_UNSUPPORTED_ORDER = 3,
    ISACAF_ERR_DIMENSION_MISMATCH = 4,
    ISACAF_ERR_INVALID_PARAMETER = 5,
    ISACAF_ERR_NOT_UNITARY = 6,
    ISACAF_ERR_INDEX_OUT_OF_RANGE = 7,
    ISACAF_ERR_INVALID_KURTOSIS = 8,
    ISACAF_ERR_ASSUMPTION_VIOLATED = 9,
    ISACAF_ERR_BUDGET_EXCEEDED = 10,
    ISACAF_ERR_SHAPE_MISMATCH = 11,
    ISACAF_ERR_IO = 12,
    ISACAF_ERR_PARSE = 13,
    ISACAF_ERR_INTERNAL = 99
} isacaf_status;

typedef enum isacaf_basis_family {
    ISACAF_BASIS_SC = 0,
    ISACAF_BASIS_OFDM = 1,
    ISACAF_BASIS_OTFS = 2,
    ISACAF_BASIS_AFDM = 3,
    ISACAF_BASIS_CUSTOM = 4
} isacaf_basis_family;

typedef enum isacaf_provenance {
    ISACAF_PROVENANCE_CLOSED_FORM_GENERAL = 0,
    ISACAF_PROVENANCE_CLOSED_FORM_FAST = 1,
    ISACAF_PROVENANCE_MONTE_CARLO = 2,
    ISACAF_PROVENANCE_EXACT_ENUMERATION = 3
} isacaf_provenance;

typedef enum isacaf_grid_format { ISACAF_GRID_LONG = 0, ISACAF_GRID_DENSE = 1 } isacaf_grid_format;

/* GENERAL: three-term closed form, O(N^4). FAST: per-column ambiguity
 * functions, O(N^3 log N). */
typedef enum isacaf_theory_method { ISACAF_THEORY_GENERAL = 0, ISACAF_THEORY_FAST = 1 } isacaf_theory_method;

typedef enum isacaf_dpaf_method { ISACAF_DPAF_NAIVE = 0, ISACAF_DPAF_FFT = 1 } isacaf_dpaf_method;

typedef struct isacaf_constellation isacaf_constellation;
typedef struct isacaf_basis isacaf_basis;
typedef struct isacaf_dpaf isacaf_dpaf; /* complex realization grid */
typedef struct isacaf_grid isacaf_grid; /* real expectation grid */

typedef struct isacaf_moments {
    double mean_re, mean_im;
    double power;
    double pseudo_variance_re, pseudo_variance_im;
    double kurtosis;
    double fourth_moment;
    double tolerance;
    int assumption1_ok;
} isacaf_moments;

typedef struct isacaf_eisl {
    double total;
    double mainlobe;
    double eisl;
    double normalized;
} isacaf_eisl;

typedef struct isacaf_comparison {
    double max_abs;
    double max_rel;
    double rms;
    size_t rel_cells;
    int has_z;
    double max_abs_z;
    size_t cells;
    size_t cells_beyond_3;
    size_t cells_beyond_4;
} isacaf_comparison;

typedef struct isacaf_mc_options {
    size_t trials;
    uint64_t seed;
    unsigned threads; /* 0: hardware concurrency */
} isacaf_mc_options;

typedef struct isacaf_trial_stat {
    double mean;
    double std_error;
} isacaf_trial_stat;

typedef struct isacaf_mc_summary {
    isacaf_trial_stat normalized_eisl;
    isacaf_trial_stat mainlobe;
    isacaf_trial_stat zero_doppler_mean;
    isacaf_trial_stat zero_delay_mean;
} isacaf_mc_summary;

ISACAF_API const char* isacaf_version(void);
ISACAF_API const char* isacaf_last_error(void);
ISACAF_API const char* isacaf_status_string(isacaf_status status);

/* Seed derivation (SplitMix64, see the README). */
ISACAF_API uint64_t isacaf_trial_seed(uint64_t base, uint64_t trial);
ISACAF_API uint64_t isacaf_labelled_seed(uint64_t base, const char* label);

/* ---- constellations ---------------------------------------------------- */
ISACAF_API isacaf_status isacaf_constellation_psk(int order, isacaf_constellation** out);
ISACAF_API isacaf_status isacaf_constellation_qam(int order, isacaf_constellation** out);
/* "qpsk", "bpsk", "16qam", "16-PSK", "qam64", ... */
ISACAF_API isacaf_status isacaf_constellation_by_name(const char* name, isacaf_constellation** out);
ISACAF_API isacaf_status isacaf_constellation_from_points(const double* re_im, size_t count, const char* name,
                                                          int normalize, isacaf_constellation** out);
/* One "re im" pair per line. */
ISACAF_API isacaf_status isacaf_constellation_load(const char* path, int normalize, isacaf_constellation** out);
ISACAF_API void isacaf_constellation_free(isacaf_constellation* c);
ISACAF_API size_t isacaf_constellation_size(const isacaf_constellation* c);
ISACAF_API const char* isacaf_constellation_name(const isacaf_constellation* c);
/* capacity counts doubles; needs 2 * size. */
ISACAF_API isacaf_status isacaf_constellation_points(const isacaf_constellation* c, double* re_im, size_t capacity);
ISACAF_API isacaf_status isacaf_constellation_moments(const isacaf_constellation* c, double tol, isacaf_moments* out);
ISACAF_API isacaf_status isacaf_sample_symbols(const isacaf_constellation* c, size_t n, uint64_t seed,
                                               double* re_im_out);

/* ---- bases ------------------------------------------------------------- */
ISACAF_API isacaf_status isacaf_basis_sc(size_t n, isacaf_basis** out);
ISACAF_API isacaf_status isacaf_basis_ofdm(size_t n, isacaf_basis** out);
ISACAF_API isacaf_status isacaf_basis_otfs(size_t c, size_t l, isacaf_basis** out);
ISACAF_API isacaf_status isacaf_basis_afdm(size_t n, double c1, double c2, isacaf_basis** out);
ISACAF_API isacaf_status isacaf_basis_haar(size_t n, uint64_t seed, isacaf_basis** out);
/* Column-major interleaved N x N matrix, rejected unless unitary at tol. */
ISACAF_API isacaf_status isacaf_basis_from_matrix(size_t n, const double* re_im, double tol, isacaf_basis** out);
ISACAF_API isacaf_status isacaf_basis_load(const char* path, isacaf_basis** out);
ISACAF_API void isacaf_basis_free(isacaf_basis* b);
ISACAF_API size_t isacaf_basis_size(const isacaf_basis* b);
ISACAF_API isacaf_basis_family isacaf_basis_family_of(const isacaf_basis* b);
ISACAF_API const char* isacaf_basis_label(const isacaf_basis* b);
/* capacity counts doubles; needs 2 N^2. */
ISACAF_API isacaf_status isacaf_basis_matrix(const isacaf_basis* b, double* re_im, size_t capacity);
ISACAF_API isacaf_status isacaf_verify_unitary(size_t n, const double* re_im, double tol, int* ok, double* defect);

/* ---- realizations ------------------------------------------------------ */
/* symbols and signal hold 2N doubles. */
ISACAF_API isacaf_status isacaf_modulate(const isacaf_basis* b, const double* symbols, double* signal_out);
ISACAF_API isacaf_status isacaf_dpaf_point(const isacaf_basis* b, const double* symbols, size_t k, size_t q,
                                           double out[2]);
ISACAF_API isacaf_status isacaf_dpaf_compute(const isacaf_basis* b, const double* symbols, isacaf_dpaf_method method,
                                             isacaf_dpaf** out);
ISACAF_API void isacaf_dpaf_free(isacaf_dpaf* g);
ISACAF_API size_t isacaf_dpaf_size(const isacaf_dpaf* g);
/* 2 N^2 doubles. */
ISACAF_API isacaf_status isacaf_dpaf_values(const isacaf_dpaf* g, double* re_im, size_t capacity);
ISACAF_API isacaf_status isacaf_dpaf_write_csv(const isacaf_dpaf* g, const char* path, isacaf_grid_format fmt);

/* ---- closed forms ------------------------------------------------------ */
ISACAF_API isacaf_status isacaf_theory_grid(const isacaf_basis* b, double mu4, isacaf_theory_method method,
                                            isacaf_grid** out);
ISACAF_API isacaf_status isacaf_theory_zero_doppler(const isacaf_basis* b, double mu4, size_t k, double* out);
ISACAF_API isacaf_status isacaf_theory_zero_delay(const isacaf_basis* b, double mu4, size_t q, double* out);
ISACAF_API isacaf_status isacaf_theory_sidelobe(const isacaf_basis* b, double mu4, size_t k, size_t q, double* out);
ISACAF_API isacaf_status isacaf_theory_mainlobe(size_t n, double mu4, double* out);
ISACAF_API isacaf_status isacaf_theory_bounds(size_t n, double mu4, double* lower, double* upper);
ISACAF_API isacaf_status isacaf_theory_eisl(const isacaf_basis* b, double mu4, isacaf_eisl* out);
ISACAF_API isacaf_status isacaf_theory_eisl_analytic(size_t n, double mu4, isacaf_eisl* out);

/* ---- Monte Carlo and enumeration -------------------------------------- */
/* summary may be NULL. */
ISACAF_API isacaf_status isacaf_mc_grid(const isacaf_basis* b, const isacaf_constellation* c,
                                        const isacaf_mc_options* opts, isacaf_grid** out,
                                        isacaf_mc_summary* summary);
/* budget 0 selects the default of 65536 symbol vectors. */
ISACAF_API isacaf_status isacaf_exact_grid(const isacaf_basis* b, const isacaf_constellation* c, size_t budget,
                                           isacaf_grid** out);
/* floor < 0 selects 1e-6 N^2. */
ISACAF_API isacaf_status isacaf_compare_grids(const isacaf_grid* a, const isacaf_grid* b, double floor,
                                              isacaf_comparison* out);

/* ---- expectation grids ------------------------------------------------- */
ISACAF_API void isacaf_grid_free(isacaf_grid* g);
ISACAF_API size_t isacaf_grid_size(const isacaf_grid* g);
ISACAF_API isacaf_provenance isacaf_grid_provenance(const isacaf_grid* g);
ISACAF_API const char* isacaf_provenance_name(isacaf_provenance p);
ISACAF_API size_t isacaf_grid_trials(const isacaf_grid* g);
ISACAF_API int isacaf_grid_has_std_errors(const isacaf_grid* g);
/* N^2 doubles each. */
ISACAF_API isacaf_status isacaf_grid_values(const isacaf_grid* g, double* out, size_t capacity);
ISACAF_API isacaf_status isacaf_grid_std_errors(const isacaf_grid* g, double* out, size_t capacity);
ISACAF_API isacaf_status isacaf_grid_eisl(const isacaf_grid* g, isacaf_eisl* out);
ISACAF_API isacaf_status isacaf_grid_write_csv(const isacaf_grid* g, const char* path, isacaf_grid_format fmt);
ISACAF_API isacaf_status isacaf_grid_read_csv(const char* path, isacaf_grid** out);

#ifdef __cplusplus
}
#endif

#endif /* ISACAF_H */
