// Copyright 2026 The dualreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to libdualreg.
 *
 * Every fallible call returns a dr_status; on failure dr_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the caller,
 * who releases them with the matching *_destroy function (NULL is accepted).
 * Array-valued results come back as a dr_table: named double columns plus
 * named scalars and free-text notes. */

#ifndef DUALREG_DUALREG_H_
#define DUALREG_DUALREG_H_

#include <stddef.h>

#if defined(DUALREG_BUILDING)
#define DR_API __attribute__((visibility("default")))
#else
#define DR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dr_status {
  DR_OK = 0,
  DR_INVALID_ARGUMENT = 1,
  DR_UNKNOWN_PROFILE = 2,
  DR_ADMISSIBILITY_VIOLATION = 3,
  DR_DOMAIN_ERROR = 4,
  DR_QUADRATURE_FAILURE = 5,
  DR_STEP_SIZE_UNDERFLOW = 6,
  DR_RESCALE_IMPOSSIBLE = 7,
  DR_NO_FREE_REGION = 8,
  DR_ILL_CONDITIONED_FIT = 9,
  DR_SINGULAR_COEFFICIENT = 10,
  DR_RESONANT_BOX = 11,
  DR_GRID_TOO_COARSE = 12,
  DR_EXTRAPOLATION_UNSTABLE = 13,
  DR_DEGENERATE_DENOMINATOR = 14,
  DR_DIMENSION_TOO_LARGE = 15,
  DR_NO_CONVERGENCE = 16,
  DR_FIT_POOR = 17,
  DR_NOT_UNIMODULAR = 18,
  DR_NULL_HANDLE = 100,
  DR_OUT_OF_RANGE = 101,
  DR_INTERNAL = 102
} dr_status;

DR_API const char* dr_status_name(dr_status status);
DR_API const char* dr_last_error(void);
DR_API const char* dr_version(void);

typedef struct dr_profile_t* dr_profile;
typedef struct dr_potential_t* dr_potential;
typedef struct dr_density_t* dr_density;
typedef struct dr_table_t* dr_table;
typedef struct dr_thresholds_t* dr_thresholds;

/* ---- tables */

DR_API size_t dr_table_rows(dr_table t);
DR_API size_t dr_table_cols(dr_table t);
DR_API const char* dr_table_column_name(dr_table t, size_t j);
/* Pointer to rows() contiguous values, valid until the table is destroyed. */
DR_API dr_status dr_table_column(dr_table t, size_t j, const double** data);
DR_API dr_status dr_table_value(dr_table t, size_t i, size_t j, double* out);
DR_API size_t dr_table_scalar_count(dr_table t);
DR_API const char* dr_table_scalar_name(dr_table t, size_t i);
DR_API dr_status dr_table_scalar_at(dr_table t, size_t i, double* out);
DR_API dr_status dr_table_scalar(dr_table t, const char* name, double* out);
DR_API size_t dr_table_note_count(dr_table t);
DR_API const char* dr_table_note(dr_table t, size_t i);
DR_API void dr_table_destroy(dr_table t);

/* ---- mollifier profiles: "tanh", "algebraic", "smoothstep" */

DR_API dr_status dr_profile_create(const char* name, dr_profile* out);
DR_API void dr_profile_destroy(dr_profile p);
DR_API const char* dr_profile_name(dr_profile p);
/* sigma, sigma', sigma'', sigma''' at t. */
DR_API dr_status dr_profile_eval(dr_profile p, double t, double out[4]);
/* int [transform of sigma']^2 dw. */
DR_API dr_status dr_profile_sigma1_sq_integral(dr_profile p, double* out);

/* ---- regularized potentials */

typedef enum dr_potential_kind {
  DR_DUALITY_PRESERVING = 0,
  DR_CHEON_SHIGEHARA = 1,
  DR_NAIVE_DELTA_PRIME = 2,
  DR_LORENTZIAN_TOY = 3
} dr_potential_kind;

/* profile is required for DR_DUALITY_PRESERVING and DR_NAIVE_DELTA_PRIME and
 * ignored otherwise. a_inner <= 0 picks the default comb inner width. */
DR_API dr_status dr_potential_create(dr_potential_kind kind, dr_profile profile, double a, double beta,
                                     double a_inner, dr_potential* out);
DR_API void dr_potential_destroy(dr_potential p);
DR_API dr_status dr_potential_eval(dr_potential p, double x, double* out);

/* ---- two-body problem */

typedef struct dr_jump {
  double P, Q;
  double beta_eff;
  double x_fit, x0;
  double fit_residual;
  double condition;
  int valid;
} dr_jump;

/* Odd solution normalized to psi(x0) = 1. Columns x, psi, dpsi. jump may be NULL. */
DR_API dr_status dr_solve_odd(dr_potential p, double k, double x0, double tol, dr_table* wave, dr_jump* jump);

/* Even zero-energy solution. Columns x, phi, dphi, I; scalar ode_residual. */
DR_API dr_status dr_zero_mode(dr_potential p, double x0, dr_table* out);

typedef struct dr_sweep_config {
  dr_potential_kind kind;
  dr_profile profile;
  double beta;
  double a_inner_factor; /* comb only; 0 means 1 */
  double k;
  double x0; /* <= 0 picks a matching point automatically */
  const double* a;
  size_t n_a;
  double tol; /* <= 0 keeps the default */
  unsigned threads;
} dr_sweep_config;

/* Columns a, beta_eff, abs_error, rel_error, fit_residual, ok; scalars
 * fitted_order, x0. Rows that failed carry a note. */
DR_API dr_status dr_jump_sweep(const dr_sweep_config* cfg, dr_table* out);

/* Columns n, a, psi_next0, dpsi0, mismatch, window_shift. */
DR_API dr_status dr_conjecture(dr_profile profile, const double* a, size_t n_a, double k, double x0, int n_max,
                               size_t points, unsigned threads, dr_table* out);

/* Series terms on a refined grid of `points` nodes, keeping every stride-th
 * node and the last. Columns x, psi_0..psi_n_max, dpsi_0..dpsi_n_max. */
DR_API dr_status dr_perturb_series(dr_profile profile, double a, double k, double x0, int n_max, size_t points,
                                   size_t stride, dr_table* out);

/* Residual of the order-`order` beta series against the direct solution on
 * x >= x_min. Columns beta, residual; scalar slope. */
DR_API dr_status dr_beta_series(dr_profile profile, double a, double k, double x0, int order, size_t points,
                                const double* beta, size_t n_beta, double x_min, dr_table* out);

/* Columns a, beta_eff, first_order_beta_eff, singular_points; scalar
 * first_order_extrapolated. */
DR_API dr_status dr_naive_delta_prime(dr_profile profile, const double* a, size_t n_a, double beta, double k,
                                      double x0, double excision_over_a, dr_table* out);

/* Columns x, f, f_first_order; scalars jump, jump_first_order. */
DR_API dr_status dr_lorentzian_toy(double a, double beta, const double* x, size_t n_x, double x_probe,
                                   dr_table* out);

/* ---- many-body */

typedef struct dr_energy {
  double a, beta;
  double E0, E1, E2, total;
  double E1_order1, E1_order2, E2_sing, E2_reg;
} dr_energy;

/* modes == NULL selects the zero-momentum ground state. Warnings go to the
 * notes of *warnings when it is non-NULL. */
DR_API dr_status dr_lattice_pt(dr_potential p, int M, double L, int N, const int* modes, size_t n_modes,
                               dr_energy* out, dr_table* warnings);

/* Columns level, energy; scalars dimension, momentum, iterative. */
DR_API dr_status dr_exact_diag(dr_potential p, int M, double L, int N, int n_levels, int momentum,
                               dr_table* out);

DR_API dr_status dr_continuum_pair_energy(dr_potential p, double L, double* out);

DR_API dr_status dr_density_fermi_sea(double q, dr_density* out);
DR_API dr_status dr_density_tabulated(const double* lambda, const double* rho, size_t n, dr_density* out);
DR_API void dr_density_destroy(dr_density d);
DR_API dr_status dr_density_moment(dr_density d, int k, double* out);

/* rel_tol <= 0 keeps the default nested-quadrature tolerance. */
DR_API dr_status dr_thermo_pt(dr_density rho, dr_potential p, double rel_tol, dr_energy* out);
DR_API dr_status dr_thermo_e2_direct(dr_density rho, dr_potential p, double rel_tol, double* out);

/* Columns a, E1_beta2, E2_sing; scalars c1, d1, c2, d2, c1_analytic,
 * fit_residual1, fit_residual2, cancellation. */
DR_API dr_status dr_divergence_audit(dr_density rho, dr_profile profile, double beta, const double* a, size_t n_a,
                                     double max_residual, dr_table* out);

DR_API dr_status dr_closed_form(dr_density rho, double beta, double* out);

/* One row: four_rho, three_rho_a, three_rho_b, intermediate, reduced, closed. */
DR_API dr_status dr_regular_part_identities(dr_density rho, dr_table* out);

DR_API dr_status dr_extrapolate_linear(const double* a, const double* y, size_t n, double* value, double* slope);

/* ---- Lieb-Liniger */

/* Columns quantum_number, rapidity; scalars energy, energy_density, residual, iterations. */
DR_API dr_status dr_bethe_ground(int N, double L, double c, dr_table* out);

/* Columns c, E_over_L, residual; scalars e0, p, q, e0_err, p_err, q_err, rel_rms. */
DR_API dr_status dr_bethe_fit(int N, double L, const double* c, size_t n_c, double max_rel_rms, dr_table* out);

/* ---- acceptance checks */

DR_API dr_status dr_thresholds_create(dr_thresholds* out);
DR_API void dr_thresholds_destroy(dr_thresholds t);
DR_API dr_status dr_thresholds_set(dr_thresholds t, const char* name, double value);
DR_API dr_status dr_thresholds_get(dr_thresholds t, const char* name, double* out);
DR_API size_t dr_thresholds_count(void);
DR_API const char* dr_thresholds_name(size_t i);

DR_API int dr_criterion_count(void);
DR_API const char* dr_criterion_name(int id);

/* Runs criterion id (1-based). thresholds may be NULL for the defaults. The
 * table holds the measured values as scalars plus "seconds"; note 0 is the
 * PASS/FAIL line and note 1, if present, the error text. Numerical failures
 * inside the experiment count as a failed criterion, not a failed call. */
DR_API dr_status dr_acceptance_run(int id, dr_thresholds thresholds, int* pass, dr_table* out);

#ifdef __cplusplus
}
#endif

#endif  // DUALREG_DUALREG_H_
