/* SPDX-License-Identifier: Apache-2.0 */
#include "isacaf/isacaf.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

#define EXPECT_OK(call)                                                                      \
    do {                                                                                     \
        isacaf_status st_ = (call);                                                          \
        if (st_ != ISACAF_OK) {                                                              \
            fprintf(stderr, "%s:%d: %s -> %s (%s)\n", __FILE__, __LINE__, #call,             \
                    isacaf_status_string(st_), isacaf_last_error());                         \
            ++failures;                                                                      \
        }                                                                                    \
    } while (0)

static void test_constellations(void) {
    isacaf_constellation* c = NULL;
    isacaf_moments m;
    double pts[32];

    EXPECT_OK(isacaf_constellation_qam(16, &c));
    EXPECT(isacaf_constellation_size(c) == 16);
    EXPECT_OK(isacaf_constellation_moments(c, 1e-9, &m));
    EXPECT(fabs(m.kurtosis - 1.32) < 1e-12);
    EXPECT(m.assumption1_ok == 1);
    EXPECT(isacaf_constellation_points(c, pts, 31) == ISACAF_ERR_INVALID_ARGUMENT);
    EXPECT_OK(isacaf_constellation_points(c, pts, 32));
    EXPECT(fabs(pts[0] + 3.0 / sqrt(10.0)) < 1e-15);
    isacaf_constellation_free(c);

    EXPECT_OK(isacaf_constellation_by_name("bpsk", &c));
    EXPECT_OK(isacaf_constellation_moments(c, 1e-9, &m));
    EXPECT(m.assumption1_ok == 0);
    EXPECT(strcmp(isacaf_constellation_name(c), "BPSK") == 0);
    isacaf_constellation_free(c);

    c = (isacaf_constellation*)0x1;
    EXPECT(isacaf_constellation_psk(1, &c) == ISACAF_ERR_INVALID_ORDER);
    EXPECT(c == NULL);
    EXPECT(strlen(isacaf_last_error()) > 0);
    EXPECT(isacaf_constellation_qam(8, &c) == ISACAF_ERR_UNSUPPORTED_ORDER);

    {
        const double raw[8] = {2, 0, 0, 2, -2, 0, 0, -2};
        EXPECT_OK(isacaf_constellation_from_points(raw, 4, "big", 1, &c));
        EXPECT_OK(isacaf_constellation_moments(c, 1e-9, &m));
        EXPECT(fabs(m.power - 1.0) < 1e-12);
        isacaf_constellation_free(c);
    }
    EXPECT(isacaf_constellation_by_name(NULL, &c) == ISACAF_ERR_INVALID_ARGUMENT);
}

static void test_bases_and_dpaf(void) {
    isacaf_basis* b = NULL;
    isacaf_constellation* c = NULL;
    isacaf_dpaf* g = NULL;
    double sym[16], sig[16], pt[2], vals[128];
    int ok = 0;
    double defect = -1.0;
    size_t i;

    EXPECT_OK(isacaf_basis_ofdm(8, &b));
    EXPECT(isacaf_basis_size(b) == 8);
    EXPECT(isacaf_basis_family_of(b) == ISACAF_BASIS_OFDM);
    EXPECT(strcmp(isacaf_basis_label(b), "OFDM") == 0);
    EXPECT_OK(isacaf_basis_matrix(b, vals, 128));
    EXPECT_OK(isacaf_verify_unitary(8, vals, 1e-10, &ok, &defect));
    EXPECT(ok == 1 && defect < 1e-12);

    EXPECT_OK(isacaf_constellation_psk(4, &c));
    EXPECT_OK(isacaf_sample_symbols(c, 8, 1, sym));
    EXPECT_OK(isacaf_modulate(b, sym, sig));
    EXPECT_OK(isacaf_dpaf_point(b, sym, 0, 0, pt));
    EXPECT(fabs(pt[0] - 8.0) < 1e-12 && fabs(pt[1]) < 1e-12);
    for (i = 1; i < 8; ++i) {
        EXPECT_OK(isacaf_dpaf_point(b, sym, i, 0, pt));
        EXPECT(hypot(pt[0], pt[1]) < 1e-8 * 8);
    }
    EXPECT(isacaf_dpaf_point(b, sym, 8, 0, pt) == ISACAF_ERR_INDEX_OUT_OF_RANGE);

    EXPECT_OK(isacaf_dpaf_compute(b, sym, ISACAF_DPAF_FFT, &g));
    EXPECT(isacaf_dpaf_size(g) == 8);
    EXPECT_OK(isacaf_dpaf_values(g, vals, 128));
    EXPECT(fabs(vals[0] - 8.0) < 1e-12);
    isacaf_dpaf_free(g);
    isacaf_basis_free(b);

    EXPECT(isacaf_basis_otfs(0, 4, &b) == ISACAF_ERR_INVALID_PARAMETER);
    EXPECT(isacaf_basis_afdm(7, 0.0, 0.0, &b) == ISACAF_ERR_INVALID_PARAMETER);
    EXPECT_OK(isacaf_basis_afdm(8, 1.0 / 16.0, 0.0, &b));
    isacaf_basis_free(b);
    EXPECT_OK(isacaf_basis_haar(8, 3, &b));
    EXPECT_OK(isacaf_basis_matrix(b, vals, 128));
    isacaf_basis_free(b);
    EXPECT_OK(isacaf_basis_from_matrix(8, vals, 1e-10, &b));
    EXPECT(isacaf_basis_family_of(b) == ISACAF_BASIS_CUSTOM);
    isacaf_basis_free(b);
    vals[0] += 0.1;
    EXPECT(isacaf_basis_from_matrix(8, vals, 1e-10, &b) == ISACAF_ERR_NOT_UNITARY);
    isacaf_constellation_free(c);
}

static void test_theory_and_mc(void) {
    isacaf_basis* b = NULL;
    isacaf_constellation* c = NULL;
    isacaf_grid *th = NULL, *fast = NULL, *mc = NULL, *ex = NULL, *back = NULL;
    isacaf_mc_options opts;
    isacaf_mc_summary summary;
    isacaf_comparison cmp;
    isacaf_eisl e;
    double v, lo, hi;
    double vals[16], se[16];
    const char* path = "isacaf_capi_grid.csv";

    EXPECT_OK(isacaf_basis_ofdm(4, &b));
    EXPECT_OK(isacaf_constellation_psk(4, &c));

    EXPECT_OK(isacaf_theory_grid(b, 1.0, ISACAF_THEORY_GENERAL, &th));
    EXPECT_OK(isacaf_theory_grid(b, 1.0, ISACAF_THEORY_FAST, &fast));
    EXPECT(isacaf_grid_provenance(th) == ISACAF_PROVENANCE_CLOSED_FORM_GENERAL);
    EXPECT(strcmp(isacaf_provenance_name(isacaf_grid_provenance(fast)), "closed_form_fast") == 0);
    EXPECT_OK(isacaf_exact_grid(b, c, 0, &ex));
    EXPECT(isacaf_grid_trials(ex) == 256);
    EXPECT_OK(isacaf_compare_grids(ex, th, -1.0, &cmp));
    EXPECT(cmp.max_abs < 1e-10);
    EXPECT(cmp.has_z == 0);
    EXPECT(cmp.cells == 16);

    EXPECT_OK(isacaf_theory_zero_doppler(b, 1.32, 1, &v));
    EXPECT(fabs(v - 0.32 * 4) < 1e-12);
    EXPECT_OK(isacaf_theory_zero_delay(b, 1.32, 2, &v));
    EXPECT(fabs(v - 4.0) < 1e-12);
    EXPECT_OK(isacaf_theory_sidelobe(b, 2.0, 1, 1, &v));
    EXPECT(fabs(v - 4.0) < 1e-12);
    EXPECT(isacaf_theory_zero_doppler(b, 1.32, 0, &v) == ISACAF_ERR_INVALID_ARGUMENT);
    EXPECT(isacaf_theory_grid(b, 0.5, ISACAF_THEORY_FAST, &mc) == ISACAF_ERR_INVALID_KURTOSIS);
    EXPECT_OK(isacaf_theory_mainlobe(128, 1.32, &v));
    EXPECT(fabs(v - 16424.96) < 1e-9);
    EXPECT_OK(isacaf_theory_bounds(64, 1.32, &lo, &hi));
    EXPECT(fabs(lo - 20.48) < 1e-12 && hi == 64.0);
    EXPECT_OK(isacaf_theory_eisl(b, 1.32, &e));
    EXPECT(fabs(e.normalized - 3.0) < 1e-12);
    EXPECT_OK(isacaf_theory_eisl_analytic(128, 1.32, &e));
    EXPECT(fabs(e.total - 2102394.88) < 1e-6);

    opts.trials = 64;
    opts.seed = 1;
    opts.threads = 2;
    EXPECT_OK(isacaf_mc_grid(b, c, &opts, &mc, &summary));
    EXPECT(isacaf_grid_has_std_errors(mc) == 1);
    EXPECT(fabs(summary.normalized_eisl.mean - 3.0) < 1e-9);
    EXPECT_OK(isacaf_grid_values(mc, vals, 16));
    EXPECT_OK(isacaf_grid_std_errors(mc, se, 16));
    EXPECT(isacaf_grid_std_errors(th, se, 16) == ISACAF_ERR_INVALID_ARGUMENT);
    EXPECT_OK(isacaf_compare_grids(mc, th, -1.0, &cmp));
    EXPECT(cmp.has_z == 1);
    EXPECT_OK(isacaf_grid_eisl(mc, &e));
    EXPECT(fabs(e.normalized - 3.0) < 1e-9);

    EXPECT_OK(isacaf_grid_write_csv(mc, path, ISACAF_GRID_LONG));
    EXPECT_OK(isacaf_grid_read_csv(path, &back));
    EXPECT(isacaf_grid_trials(back) == 64);
    {
        double again[16];
        EXPECT_OK(isacaf_grid_values(back, again, 16));
        EXPECT(memcmp(again, vals, sizeof vals) == 0);
    }
    remove(path);
    EXPECT(isacaf_grid_read_csv("/nonexistent/dir/grid.csv", &back) == ISACAF_ERR_IO);

    isacaf_grid_free(th);
    isacaf_grid_free(fast);
    isacaf_grid_free(mc);
    isacaf_grid_free(ex);
    isacaf_grid_free(back);
    isacaf_basis_free(b);
    isacaf_constellation_free(c);
}

static void test_misc(void) {
    EXPECT(strlen(isacaf_version()) > 0);
    EXPECT(strcmp(isacaf_status_string(ISACAF_OK), "ok") == 0);
    EXPECT(isacaf_trial_seed(1234567, 0) == 6457827717110365317ULL);
    EXPECT(isacaf_labelled_seed(1, "SC") != isacaf_labelled_seed(1, "OFDM"));
    /* free functions accept NULL */
    isacaf_basis_free(NULL);
    isacaf_grid_free(NULL);
    isacaf_dpaf_free(NULL);
    isacaf_constellation_free(NULL);
}

int main(void) {
    test_constellations();
    test_bases_and_dpaf();
    test_theory_and_mc();
    test_misc();
    if (failures) {
        fprintf(stderr, "%d C API check(s) failed\n", failures);
        return EXIT_FAILURE;
    }
    printf("C API checks passed\n");
    return EXIT_SUCCESS;
}
