#ifndef FVPREG_FVPREG_H
#define FVPREG_FVPREG_H

#include <stddef.h>
#include <stdint.h>

#if defined(FVPREG_BUILDING_LIBRARY)
#define FVPREG_API __attribute__((visibility("default")))
#else
#define FVPREG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fvpreg_status {
  FVPREG_OK = 0,
  FVPREG_ERR_INTERNAL = 1,
  FVPREG_ERR_CONFIG = 2,
  FVPREG_ERR_NONCONVERGENCE = 3,
  FVPREG_ERR_DOMINANCE = 4,
  FVPREG_ERR_CONTRACT = 5,
  FVPREG_ERR_RANGE = 6,
  FVPREG_ERR_OVERFLOW = 7,
  FVPREG_ERR_UNSUPPORTED = 8,
  FVPREG_ERR_NO_ROOT = 9,
  FVPREG_ERR_NOISE_TOO_LARGE = 10,
  FVPREG_ERR_REFERENCE_REJECTED = 11,
  FVPREG_ERR_MODEL_MISMATCH = 12
} fvpreg_status;

/* Message of the last failed call on this thread ("" if none). */
FVPREG_API const char* fvpreg_last_error(void);
FVPREG_API const char* fvpreg_version(void);

/* ---- eigen-models ------------------------------------------------------ */

typedef struct fvpreg_model fvpreg_model;

/* (0,1) with lambda_j = j^2 pi^2, j = 1..modes. */
FVPREG_API fvpreg_status fvpreg_model_unit_interval(size_t modes, fvpreg_model** out);
FVPREG_API fvpreg_status fvpreg_model_from_eigenvalues(int dimension, const double* lambda,
                                                       size_t count, double e1, double e2,
                                                       fvpreg_model** out);
FVPREG_API size_t fvpreg_model_mode_count(const fvpreg_model* model);
FVPREG_API fvpreg_status fvpreg_model_eigenvalue(const fvpreg_model* model, size_t j,
                                                 double* out);
FVPREG_API void fvpreg_model_destroy(fvpreg_model* model);

/* ---- regularized solve ------------------------------------------------- */

typedef enum fvpreg_source_kind {
  FVPREG_SOURCE_ZERO = 0,
  FVPREG_SOURCE_LINEAR = 1, /* F(t,u) = c u */
  FVPREG_SOURCE_SINE = 2    /* u_j -> sin(u_j) */
} fvpreg_source_kind;

typedef struct fvpreg_problem {
  double tau;
  fvpreg_source_kind source;
  double source_c;
} fvpreg_problem;

typedef struct fvpreg_solver_config {
  size_t truncation;
  size_t n_steps;
  double picard_tol;
  size_t max_iters;
  size_t anderson_depth; /* 0 = plain Picard */
} fvpreg_solver_config;

/* N = 1, n_steps = 1000, picard_tol = 1e-11, max_iters = 500, plain. */
FVPREG_API void fvpreg_solver_config_init(fvpreg_solver_config* cfg);

typedef struct fvpreg_trajectory fvpreg_trajectory;

/* Regularized solution for final data `data` (count coefficients, zero
 * padded to the mode count). `perturbation` may be NULL; when given it is
 * added to the data as a separate noise term. */
FVPREG_API fvpreg_status fvpreg_solve(const fvpreg_model* model, const fvpreg_problem* problem,
                                      const fvpreg_solver_config* cfg, const double* data,
                                      const double* perturbation, size_t count,
                                      fvpreg_trajectory** out);

/* Exact single-mode solution for F = c u, g = phi_n. */
FVPREG_API fvpreg_status fvpreg_closed_form(const fvpreg_model* model, size_t n, double c,
                                            double tau, size_t n_steps, fvpreg_trajectory** out);

FVPREG_API size_t fvpreg_trajectory_time_count(const fvpreg_trajectory* tr);
FVPREG_API size_t fvpreg_trajectory_mode_count(const fvpreg_trajectory* tr);
FVPREG_API fvpreg_status fvpreg_trajectory_time(const fvpreg_trajectory* tr, size_t i, double* t);
/* Copies min(count, modes) coefficients of state i. */
FVPREG_API fvpreg_status fvpreg_trajectory_state(const fvpreg_trajectory* tr, size_t i,
                                                 double* out, size_t count);
FVPREG_API fvpreg_status fvpreg_trajectory_norm(const fvpreg_trajectory* tr, size_t i,
                                                double* out);
/* Solver diagnostics; zero for closed-form trajectories. */
FVPREG_API size_t fvpreg_trajectory_iterations(const fvpreg_trajectory* tr);
FVPREG_API double fvpreg_trajectory_residual(const fvpreg_trajectory* tr);
FVPREG_API double fvpreg_trajectory_contraction_index(const fvpreg_trajectory* tr);
FVPREG_API void fvpreg_trajectory_destroy(fvpreg_trajectory* tr);

/* ---- noise -------------------------------------------------------------- */

typedef enum fvpreg_noise_direction {
  FVPREG_NOISE_WORST_CASE_MODE = 0,
  FVPREG_NOISE_SEEDED_RANDOM = 1
} fvpreg_noise_direction;

/* Writes delta * e (unit direction) into out[0..count). count must equal
 * the mode count. */
FVPREG_API fvpreg_status fvpreg_make_noise(const fvpreg_model* model,
                                           fvpreg_noise_direction direction, size_t mode,
                                           uint64_t seed, double delta, double* out,
                                           size_t count);

/* ---- ill-posedness example --------------------------------------------- */

typedef struct fvpreg_illposed_row {
  size_t n;
  double beta;
  double data_norm;     /* 1/|beta_n| */
  double solution_norm; /* ||v^n(t)|| */
  double lower_bound;   /* e^{|beta_n|(tau-t)}/|beta_n| */
} fvpreg_illposed_row;

FVPREG_API fvpreg_status fvpreg_illposed_row_at(const fvpreg_model* model, size_t n, double tau,
                                                double t, fvpreg_illposed_row* out);

/* ---- parameter choice --------------------------------------------------- */

typedef enum fvpreg_rule { FVPREG_RULE_HOLDER = 0, FVPREG_RULE_LOG = 1 } fvpreg_rule;

typedef struct fvpreg_choice_inputs {
  fvpreg_rule rule;
  double index; /* q (Hoelder) or p (log) */
  double rho;
  double delta;
  double t;
  double tau;
} fvpreg_choice_inputs;

typedef struct fvpreg_choice_result {
  size_t N;
  double raw;
  int clamped;
} fvpreg_choice_result;

FVPREG_API fvpreg_status fvpreg_choose_n(const fvpreg_model* model,
                                         const fvpreg_choice_inputs* in,
                                         fvpreg_choice_result* out);

/* ---- Gronwall sweep ----------------------------------------------------- */

typedef struct fvpreg_gronwall_result {
  size_t cases;
  size_t points_checked;
  size_t violations;
  double min_ratio;
} fvpreg_gronwall_result;

FVPREG_API fvpreg_status fvpreg_gronwall_sweep(uint64_t seed, size_t cases, double tau,
                                               size_t n_steps, fvpreg_gronwall_result* out);

/* ---- experiments -------------------------------------------------------- */

typedef struct fvpreg_report fvpreg_report;

/* Runs the experiment described by a JSON document. Dominance violations
 * do not fail the call; query fvpreg_report_violations. */
FVPREG_API fvpreg_status fvpreg_experiment_run(const char* json, fvpreg_report** out);
FVPREG_API const char* fvpreg_report_csv(const fvpreg_report* report);
FVPREG_API const char* fvpreg_report_summary(const fvpreg_report* report);
FVPREG_API size_t fvpreg_report_violations(const fvpreg_report* report);
FVPREG_API void fvpreg_report_destroy(fvpreg_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FVPREG_FVPREG_H */
