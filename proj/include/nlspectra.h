/* nlspectra — spectra of nonlocal linearized operators on bounded intervals.
 *
 * C interface of the shared library. All objects are opaque handles created
 * by nls_*_create / nls_*_compute functions and released with the matching
 * nls_*_free. Every function that can fail returns an nls_status; on failure
 * nls_last_error() gives a thread-local message.
 */
#ifndef NLSPECTRA_H
#define NLSPECTRA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nls_status {
    NLS_OK = 0,
    NLS_ERR_INVALID_ARGUMENT = 1,
    NLS_ERR_NO_CONVERGENCE = 2,
    NLS_ERR_IO = 3,
    NLS_ERR_INTERNAL = 4
} nls_status;

typedef enum nls_bc { NLS_BC_DIRICHLET = 0, NLS_BC_NEUMANN = 1 } nls_bc;

const char* nls_version(void);
const char* nls_last_error(void);
const char* nls_status_name(nls_status s);

/* ---- instanton ------------------------------------------------------- */

typedef struct nls_instanton nls_instanton;

/* Positive root of m = tanh(beta m); beta > 1. */
nls_status nls_solve_mbeta(double beta, double* out);

/* Solves the connection profile on a master grid [-l_max, l_max] with
 * spacing 1/inv_h using the built-in quartic kernel. */
nls_status nls_instanton_create(double beta, double l_max, int inv_h, nls_instanton** out);
void nls_instanton_free(nls_instanton* p);

double nls_instanton_mbeta(const nls_instanton* p);
double nls_instanton_sigma(const nls_instanton* p);
double nls_instanton_alpha_fit(const nls_instanton* p);
double nls_instanton_fit_r2(const nls_instanton* p);
double nls_instanton_residual(const nls_instanton* p);
int nls_instanton_size(const nls_instanton* p);
/* Copies up to cap samples into the caller's buffers (any may be NULL). */
nls_status nls_instanton_samples(const nls_instanton* p, double* x, double* m_bar, double* m_bar_prime,
                                 double* p_coeff, size_t cap);
/* CSV with columns x, m_bar, m_bar_prime, p restricted to [-l, l]. */
nls_status nls_instanton_write_csv(const nls_instanton* p, double l, const char* path);

/* ---- spectral pipeline ------------------------------------------------ */

typedef struct nls_spectral nls_spectral;

/* Restricts the instanton to [-l, l], assembles the operator with the given
 * boundary kind and solves the spectrum. eps0 <= 0 selects the default
 * (1 - sigma)/4 cutoff. */
nls_status nls_spectral_compute(const nls_instanton* p, double l, nls_bc bc, double eps0,
                                nls_spectral** out);
void nls_spectral_free(nls_spectral* s);

double nls_spectral_nu0(const nls_spectral* s);
double nls_spectral_mu1(const nls_spectral* s);
double nls_spectral_mu2(const nls_spectral* s);
double nls_spectral_trial_bound(const nls_spectral* s);
double nls_spectral_distance_to_mbar_prime(const nls_spectral* s);
double nls_spectral_harnack_gamma(const nls_spectral* s);
double nls_spectral_zeta1(const nls_spectral* s);
double nls_spectral_r0(const nls_spectral* s);
double nls_spectral_r1(const nls_spectral* s);
double nls_spectral_alpha_eps0(const nls_spectral* s);
int nls_spectral_size(const nls_spectral* s);
nls_status nls_spectral_eigenfunction(const nls_spectral* s, double* x, double* v0, size_t cap);
nls_status nls_spectral_eigenvalues(const nls_spectral* s, double* values, size_t cap);
/* Single-row report CSV (columns L, beta, nu0, mu1, mu2, trial_bound,
 * distance_to_mbar_prime, harnack_gamma, zeta1, r0, r1, alpha_eps0). */
nls_status nls_spectral_write_csv(const nls_spectral* s, const char* path);

/* ---- Markov chain and Cheeger constant -------------------------------- */

typedef struct nls_cheeger nls_cheeger;

nls_status nls_cheeger_compute(const nls_spectral* s, nls_cheeger** out);
void nls_cheeger_free(nls_cheeger* c);

double nls_cheeger_k_scan(const nls_cheeger* c);
double nls_cheeger_argmin_a(const nls_cheeger* c);
double nls_cheeger_argmin_b(const nls_cheeger* c);
double nls_cheeger_d1(const nls_cheeger* c);
double nls_cheeger_big_d1(const nls_cheeger* c);
double nls_cheeger_big_d2(const nls_cheeger* c);
double nls_cheeger_big_d(const nls_cheeger* c);
double nls_cheeger_sandwich_lower_margin(const nls_cheeger* c);
double nls_cheeger_sandwich_upper_margin(const nls_cheeger* c);
int nls_cheeger_sandwich_ok(const nls_cheeger* c);
double nls_cheeger_q_row_defect(const nls_cheeger* c);
double nls_cheeger_q_reversibility_defect(const nls_cheeger* c);
nls_status nls_cheeger_write_csv(const nls_cheeger* c, const char* path);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct nls_scan nls_scan;

/* Flat argument list instead of a config struct; struct layout is a
 * needless FFI hazard here. */
nls_status nls_scan_run(const double* betas, size_t n_betas, const double* l_values, size_t n_l,
                        int inv_h, nls_bc bc, double eps0, int workers, nls_scan** out);
/* Or load the key = value config file used by the CLI. */
nls_status nls_scan_run_config(const char* config_path, nls_scan** out);
void nls_scan_free(nls_scan* s);

size_t nls_scan_rows(const nls_scan* s);
/* Column values by name for row i (names match the scan.csv header). */
nls_status nls_scan_value(const nls_scan* s, size_t row, const char* column, double* out);
/* Row status string ("ok", "inapplicable: ...", "failed: ..."). */
const char* nls_scan_status(const nls_scan* s, size_t row);
/* Writes scan.csv, plots/, profiles/ and verdict.txt under out_dir.
 * Returns NLS_OK also when verdicts fail; query them afterwards. */
nls_status nls_scan_write_outputs(nls_scan* s, const char* out_dir);
/* Number of per-beta verdicts computed by the last write_outputs. */
size_t nls_scan_verdicts(const nls_scan* s);
/* 1 = pass, 0 = fail for verdict v. point in {1,2,3}; 0 = all points. */
int nls_scan_verdict_pass(const nls_scan* s, size_t v, int point);
double nls_scan_verdict_beta(const nls_scan* s, size_t v);

/* Re-runs the Theorem-81 style verdict on an existing scan.csv; returns the
 * number of failing verdicts through n_failed. */
nls_status nls_verify_csv(const char* scan_csv_path, const char* verdict_out_path, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* NLSPECTRA_H */
