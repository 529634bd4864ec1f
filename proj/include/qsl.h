#ifndef QSL_H
#define QSL_H

/* C interface to the qsl shared library: quantum speed-limit bounds
 * (Mandelstam-Tamm, Margolus-Levitin and the generalized alpha family),
 * survival-amplitude scans for the orthogonalization time, verification of
 * the trigonometric minorant inequality behind the alpha bounds, and the
 * mixed-state extension through the Uhlmann fidelity.
 *
 * States and density matrices are opaque handles created and freed through
 * this interface. Every fallible function returns a qsl_status; on failure
 * qsl_last_error() holds a description for the calling thread. Handles are
 * immutable after creation and may be shared across threads. */

#include <stddef.h>

#if defined(_WIN32)
#define QSL_API __declspec(dllexport)
#else
#define QSL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsl_status {
  QSL_OK = 0,
  QSL_ERR_INVALID_ARGUMENT = 1,
  QSL_ERR_CONSTRAINT = 2, /* normalization, energies below ground, bad parameters */
  QSL_ERR_GRID_TOO_COARSE = 3,
  QSL_ERR_INVALID_HORIZON = 4,
  QSL_ERR_SINGLE_LEVEL = 5,
  QSL_ERR_NOT_HERMITIAN = 6,
  QSL_ERR_NOT_PSD = 7,
  QSL_ERR_DIMENSION_MISMATCH = 8,
  QSL_ERR_MINORANT_NOT_VERIFIED = 9,
  QSL_ERR_INVALID_RANGE = 10,
  QSL_ERR_INTERNAL = 11
} qsl_status;

typedef struct qsl_state qsl_state;     /* pure state with a finite spectrum */
typedef struct qsl_density qsl_density; /* density matrix on a diagonal Hamiltonian */
typedef struct qsl_sweep qsl_sweep;     /* alpha sweep result */

QSL_API const char* qsl_version(void);

/* Message describing the last failure on the calling thread. */
QSL_API const char* qsl_last_error(void);

/* ---- state construction -------------------------------------------------- */

/* Arrays of length n_levels. ground_energy may be NULL (defaults to the
 * minimum level energy). Duplicate energies merge by amplitude addition;
 * sum |amplitude|^2 must equal 1 within 1e-12. */
QSL_API qsl_status qsl_state_create(const double* energies, const double* amp_re,
                                    const double* amp_im, size_t n_levels,
                                    const double* ground_energy, double hbar,
                                    qsl_state** out);

/* Four-level family {0, eps, n eps, (n+1) eps}, b = lambda/(sqrt(2) n^{1/4}). */
QSL_API qsl_status qsl_state_doublet(long long n, double lambda_re, double lambda_im,
                                     double epsilon, double hbar, qsl_state** out);

/* Doublet superposition sum_k (a_k/sqrt(2))(|E_k> + |E_k + eps>); arrays of
 * length n_pairs. */
QSL_API qsl_status qsl_state_paired(const double* base_energies, const double* amp_re,
                                    const double* amp_im, size_t n_pairs,
                                    double epsilon, double hbar, qsl_state** out);

QSL_API qsl_status qsl_state_intelligent(double e0, double e1, double phase0,
                                         double phase1, double hbar, qsl_state** out);

QSL_API void qsl_state_free(qsl_state* state);

QSL_API size_t qsl_state_level_count(const qsl_state* state);
QSL_API qsl_status qsl_state_level(const qsl_state* state, size_t index,
                                   double* energy, double* amp_re, double* amp_im);
QSL_API double qsl_state_hbar(const qsl_state* state);
QSL_API double qsl_state_ground_energy(const qsl_state* state);

/* ---- moments and closed-form bounds -------------------------------------- */

typedef enum qsl_bound_kind {
  QSL_BOUND_MT = 0,
  QSL_BOUND_ML = 1,
  QSL_BOUND_ALPHA = 2
} qsl_bound_kind;

typedef struct qsl_bound_report {
  qsl_bound_kind kind;
  double alpha;       /* exponent for ALPHA, 1 for ML, unused for MT */
  double value;       /* may be +infinity: the state never orthogonalizes */
  double moment_used; /* dE for MT, <E-E0> for ML, <(E-E0)^alpha> for ALPHA */
} qsl_bound_report;

QSL_API qsl_status qsl_moment(const qsl_state* state, double alpha, double* out);
QSL_API qsl_status qsl_dispersion(const qsl_state* state, double* out);
QSL_API qsl_status qsl_mt_bound(const qsl_state* state, qsl_bound_report* out);
QSL_API qsl_status qsl_ml_bound(const qsl_state* state, qsl_bound_report* out);
QSL_API qsl_status qsl_alpha_bound(const qsl_state* state, double alpha,
                                   qsl_bound_report* out);

/* ---- survival amplitude and orthogonalization time ----------------------- */

QSL_API qsl_status qsl_survival_amplitude(const qsl_state* state, double t,
                                          double* re, double* im);

typedef struct qsl_ortho_result {
  double t_first;
  double residual; /* |A(t_first)| */
  int reached;     /* residual <= tolerance */
  double scan_horizon;
  long grid_points;
} qsl_ortho_result;

/* Grid scan of |A(t)|^2 over (0, t_max] with ternary refinement; the grid
 * spacing must satisfy dt <= pi hbar / (4 (E_max - E_min)). */
QSL_API qsl_status qsl_orthogonalization_time(const qsl_state* state, double t_max,
                                              long grid_points, double tolerance,
                                              qsl_ortho_result* out);

QSL_API qsl_status qsl_recommended_grid_points(const qsl_state* state, double t_max,
                                               long* out);

typedef struct qsl_horizon {
  double t_max;
  int periodic;       /* 1 when the gaps share a common divisor */
  double gap_divisor; /* g with recurrence period 2 pi hbar / g; 0 otherwise */
} qsl_horizon;

QSL_API qsl_status qsl_default_horizon(const qsl_state* state, qsl_horizon* out);

/* ---- trigonometric minorant verification --------------------------------- */

/* x^alpha - pi^alpha/2 + (pi^alpha/2) cos x + alpha pi^{alpha-1} sin x. */
QSL_API qsl_status qsl_alpha_minorant_residual(double alpha, double x, double* out);

typedef struct qsl_minorant_certificate {
  double alpha;
  double sin_coeff;
  double cos_coeff;
  double offset;
  double x_max;
  long samples;
  double min_value;
  double min_location;
  int verified; /* min_value >= -1e-9 */
} qsl_minorant_certificate;

QSL_API qsl_status qsl_verify_alpha_minorant(double alpha, double x_max, long samples,
                                             qsl_minorant_certificate* out);

/* holds <- 1 iff f(x) - A sin x - B cos x >= -1e-9 at all samples; xs must
 * start at 0, increase strictly, spacing at most pi/100. */
QSL_API qsl_status qsl_check_minorant(const double* xs, const double* fs, size_t n,
                                      double sin_coeff, double cos_coeff, int* holds);

/* <f(t(H-E0)/hbar)> - A <sin(...)> - B <cos(...)> for the built-in family
 * f(x) = x^alpha - pi^alpha/2, A = -alpha pi^{alpha-1}, B = -pi^alpha/2. */
QSL_API qsl_status qsl_minorant_expectation_alpha(const qsl_state* state, double t,
                                                  double alpha, double* out);

/* ---- alpha sweep ---------------------------------------------------------- */

/* Log-spaced grid over [alpha_min, alpha_max] (alpha = 1 always sampled) with
 * golden-section refinement around the best grid point. */
QSL_API qsl_status qsl_sweep_alpha(const qsl_state* state, double alpha_min,
                                   double alpha_max, int grid, qsl_sweep** out);
QSL_API void qsl_sweep_free(qsl_sweep* sweep);
QSL_API size_t qsl_sweep_sample_count(const qsl_sweep* sweep);
QSL_API qsl_status qsl_sweep_sample(const qsl_sweep* sweep, size_t index,
                                    double* alpha, double* value);
QSL_API double qsl_sweep_best_alpha(const qsl_sweep* sweep);
QSL_API double qsl_sweep_best_value(const qsl_sweep* sweep);
QSL_API int qsl_sweep_refined(const qsl_sweep* sweep);

/* Doublet comparison: all bounds, the sweep and the measured t1. The sweep
 * handle is optional; pass NULL when only the flat report is needed. */
typedef struct qsl_comparison {
  qsl_bound_report mt;
  qsl_bound_report ml;
  qsl_bound_report alpha_half;
  double best_alpha;
  double best_value;
  qsl_ortho_result t1;
  int t1_present;
  qsl_bound_kind winner;
  double winner_alpha;
} qsl_comparison;

QSL_API qsl_status qsl_doublet_report(long long n, double lambda_re, double lambda_im,
                                      double epsilon, double hbar, qsl_comparison* out,
                                      qsl_sweep** sweep_out);

/* ---- mixed states ---------------------------------------------------------- */

/* entries: row-major dim x dim, split into real and imaginary parts. Must be
 * Hermitian within 1e-12, unit trace within 1e-12 and PSD within -1e-10. */
QSL_API qsl_status qsl_density_create(size_t dim, const double* energies,
                                      const double* entries_re,
                                      const double* entries_im,
                                      const double* ground_energy, double hbar,
                                      qsl_density** out);
QSL_API void qsl_density_free(qsl_density* density);
QSL_API size_t qsl_density_dim(const qsl_density* density);
QSL_API qsl_status qsl_density_entry(const qsl_density* density, size_t row,
                                     size_t col, double* re, double* im);

QSL_API qsl_status qsl_fidelity(const qsl_density* rho, const qsl_density* sigma,
                                double* out);
QSL_API qsl_status qsl_density_evolve(const qsl_density* rho, double t,
                                      qsl_density** out);
QSL_API qsl_status qsl_purified_survival_amplitude(const qsl_density* rho, double t,
                                                   double* re, double* im);
QSL_API qsl_status qsl_mixed_moment(const qsl_density* rho, double alpha,
                                    double* out);

/* fidelity F(rho, rho(t)), squared purified overlap |Tr rho e^{-itH/hbar}|^2,
 * and holds <- 1 iff fidelity >= overlap_sq - 1e-9. */
QSL_API qsl_status qsl_uhlmann_check(const qsl_density* rho, double t,
                                     double* fidelity, double* overlap_sq,
                                     int* holds);

QSL_API qsl_status qsl_density_horizon(const qsl_density* rho, qsl_horizon* out);
QSL_API qsl_status qsl_density_recommended_grid_points(const qsl_density* rho,
                                                       double t_max, long* out);
QSL_API qsl_status qsl_purified_first_passage(const qsl_density* rho, double t_max,
                                              long grid_points, double tolerance,
                                              qsl_ortho_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSL_H */
