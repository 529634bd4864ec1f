#include "qsl.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsl/alpha_optimizer.hpp"
#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/minorant.hpp"
#include "qsl/mixed_states.hpp"
#include "qsl/spectral_state.hpp"

struct qsl_state {
  qsl::SpectralState impl;
};

struct qsl_density {
  qsl::DensityMatrix impl;
};

struct qsl_sweep {
  qsl::AlphaSweepResult impl;
};

namespace {

thread_local std::string g_last_error;

qsl_status map_code(qsl::ErrorCode code) {
  switch (code) {
    case qsl::ErrorCode::InvalidArgument: return QSL_ERR_INVALID_ARGUMENT;
    case qsl::ErrorCode::Constraint: return QSL_ERR_CONSTRAINT;
    case qsl::ErrorCode::GridTooCoarse: return QSL_ERR_GRID_TOO_COARSE;
    case qsl::ErrorCode::InvalidHorizon: return QSL_ERR_INVALID_HORIZON;
    case qsl::ErrorCode::SingleLevel: return QSL_ERR_SINGLE_LEVEL;
    case qsl::ErrorCode::NotHermitian: return QSL_ERR_NOT_HERMITIAN;
    case qsl::ErrorCode::NotPSD: return QSL_ERR_NOT_PSD;
    case qsl::ErrorCode::DimensionMismatch: return QSL_ERR_DIMENSION_MISMATCH;
    case qsl::ErrorCode::MinorantNotVerified: return QSL_ERR_MINORANT_NOT_VERIFIED;
    case qsl::ErrorCode::InvalidRange: return QSL_ERR_INVALID_RANGE;
  }
  return QSL_ERR_INTERNAL;
}

template <typename F>
qsl_status guarded(F&& body) {
  try {
    body();
    return QSL_OK;
  } catch (const qsl::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QSL_ERR_INTERNAL;
  }
}

qsl_status null_argument(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return QSL_ERR_INVALID_ARGUMENT;
}

qsl_bound_report to_c(const qsl::BoundReport& r) {
  qsl_bound_report out;
  switch (r.kind) {
    case qsl::BoundKind::MandelstamTamm: out.kind = QSL_BOUND_MT; break;
    case qsl::BoundKind::MargolusLevitin: out.kind = QSL_BOUND_ML; break;
    case qsl::BoundKind::Alpha: out.kind = QSL_BOUND_ALPHA; break;
  }
  out.alpha = r.alpha;
  out.value = r.value;
  out.moment_used = r.moment_used;
  return out;
}

qsl_ortho_result to_c(const qsl::OrthogonalizationResult& r) {
  return {r.t_first, r.residual, r.reached ? 1 : 0, r.scan_horizon, r.grid_points};
}

qsl_horizon to_c(const qsl::HorizonEstimate& h) {
  return {h.t_max, h.periodic ? 1 : 0, h.gap_divisor};
}

}  // namespace

extern "C" {

const char* qsl_version(void) { return "0.1.0"; }

const char* qsl_last_error(void) { return g_last_error.c_str(); }

qsl_status qsl_state_create(const double* energies, const double* amp_re,
                            const double* amp_im, size_t n_levels,
                            const double* ground_energy, double hbar,
                            qsl_state** out) {
  if (!out) return null_argument("out");
  if (!energies || !amp_re || !amp_im) return null_argument("level arrays");
  return guarded([&] {
    std::vector<qsl::Level> levels(n_levels);
    for (size_t i = 0; i < n_levels; ++i)
      levels[i] = {energies[i], {amp_re[i], amp_im[i]}};
    std::optional<double> ground;
    if (ground_energy) ground = *ground_energy;
    *out = new qsl_state{qsl::SpectralState(std::move(levels), ground, hbar)};
  });
}

qsl_status qsl_state_doublet(long long n, double lambda_re, double lambda_im,
                             double epsilon, double hbar, qsl_state** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new qsl_state{
        qsl::make_doublet_state(n, {lambda_re, lambda_im}, epsilon, hbar)};
  });
}

qsl_status qsl_state_paired(const double* base_energies, const double* amp_re,
                            const double* amp_im, size_t n_pairs, double epsilon,
                            double hbar, qsl_state** out) {
  if (!out) return null_argument("out");
  if (!base_energies || !amp_re || !amp_im) return null_argument("pair arrays");
  return guarded([&] {
    std::vector<std::pair<double, std::complex<double>>> pairs(n_pairs);
    for (size_t i = 0; i < n_pairs; ++i)
      pairs[i] = {base_energies[i], {amp_re[i], amp_im[i]}};
    *out = new qsl_state{qsl::make_paired_state(pairs, epsilon, hbar)};
  });
}

qsl_status qsl_state_intelligent(double e0, double e1, double phase0, double phase1,
                                 double hbar, qsl_state** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new qsl_state{qsl::make_intelligent_state(e0, e1, phase0, phase1, hbar)};
  });
}

void qsl_state_free(qsl_state* state) { delete state; }

size_t qsl_state_level_count(const qsl_state* state) {
  return state ? state->impl.size() : 0;
}

qsl_status qsl_state_level(const qsl_state* state, size_t index, double* energy,
                           double* amp_re, double* amp_im) {
  if (!state) return null_argument("state");
  if (index >= state->impl.size()) {
    g_last_error = "level index out of range";
    return QSL_ERR_INVALID_ARGUMENT;
  }
  const qsl::Level& l = state->impl.levels()[index];
  if (energy) *energy = l.energy;
  if (amp_re) *amp_re = l.amplitude.real();
  if (amp_im) *amp_im = l.amplitude.imag();
  return QSL_OK;
}

double qsl_state_hbar(const qsl_state* state) {
  return state ? state->impl.hbar() : 0.0;
}

double qsl_state_ground_energy(const qsl_state* state) {
  return state ? state->impl.ground_energy() : 0.0;
}

qsl_status qsl_moment(const qsl_state* state, double alpha, double* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::moment(state->impl, alpha); });
}

qsl_status qsl_dispersion(const qsl_state* state, double* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::dispersion(state->impl); });
}

qsl_status qsl_mt_bound(const qsl_state* state, qsl_bound_report* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = to_c(qsl::mt_bound(state->impl)); });
}

qsl_status qsl_ml_bound(const qsl_state* state, qsl_bound_report* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = to_c(qsl::ml_bound(state->impl)); });
}

qsl_status qsl_alpha_bound(const qsl_state* state, double alpha,
                           qsl_bound_report* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = to_c(qsl::alpha_bound(state->impl, alpha)); });
}

qsl_status qsl_survival_amplitude(const qsl_state* state, double t, double* re,
                                  double* im) {
  if (!state) return null_argument("state");
  if (!re || !im) return null_argument("re/im");
  return guarded([&] {
    const std::complex<double> a = qsl::survival_amplitude(state->impl, t);
    *re = a.real();
    *im = a.imag();
  });
}

qsl_status qsl_orthogonalization_time(const qsl_state* state, double t_max,
                                      long grid_points, double tolerance,
                                      qsl_ortho_result* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = to_c(qsl::orthogonalization_time(state->impl, t_max, grid_points, tolerance));
  });
}

qsl_status qsl_recommended_grid_points(const qsl_state* state, double t_max,
                                       long* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::recommended_grid_points(state->impl, t_max); });
}

qsl_status qsl_default_horizon(const qsl_state* state, qsl_horizon* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] { *out = to_c(qsl::default_horizon(state->impl)); });
}

qsl_status qsl_alpha_minorant_residual(double alpha, double x, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::alpha_minorant_residual(alpha, x); });
}

qsl_status qsl_verify_alpha_minorant(double alpha, double x_max, long samples,
                                     qsl_minorant_certificate* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const qsl::MinorantCertificate c = qsl::verify_alpha_minorant(alpha, x_max, samples);
    *out = {c.alpha,   c.sin_coeff, c.cos_coeff,    c.offset,
            c.x_max,   c.samples,   c.min_value,    c.min_location,
            c.verified ? 1 : 0};
  });
}

qsl_status qsl_check_minorant(const double* xs, const double* fs, size_t n,
                              double sin_coeff, double cos_coeff, int* holds) {
  if (!xs || !fs) return null_argument("sample arrays");
  if (!holds) return null_argument("holds");
  return guarded([&] {
    *holds = qsl::check_minorant({xs, n}, {fs, n}, sin_coeff, cos_coeff) ? 1 : 0;
  });
}

qsl_status qsl_minorant_expectation_alpha(const qsl_state* state, double t,
                                          double alpha, double* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] {
    const qsl::MinorantFunction f = qsl::MinorantFunction::alpha_family(alpha);
    const double pi_alpha = std::pow(std::numbers::pi, alpha);
    *out = qsl::minorant_expectation(state->impl, t, f,
                                     -alpha * (pi_alpha / std::numbers::pi),
                                     -0.5 * pi_alpha);
  });
}

qsl_status qsl_sweep_alpha(const qsl_state* state, double alpha_min, double alpha_max,
                           int grid, qsl_sweep** out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new qsl_sweep{qsl::sweep_alpha(state->impl, alpha_min, alpha_max, grid)};
  });
}

void qsl_sweep_free(qsl_sweep* sweep) { delete sweep; }

size_t qsl_sweep_sample_count(const qsl_sweep* sweep) {
  return sweep ? sweep->impl.samples.size() : 0;
}

qsl_status qsl_sweep_sample(const qsl_sweep* sweep, size_t index, double* alpha,
                            double* value) {
  if (!sweep) return null_argument("sweep");
  if (index >= sweep->impl.samples.size()) {
    g_last_error = "sample index out of range";
    return QSL_ERR_INVALID_ARGUMENT;
  }
  if (alpha) *alpha = sweep->impl.samples[index].alpha;
  if (value) *value = sweep->impl.samples[index].bound_value;
  return QSL_OK;
}

double qsl_sweep_best_alpha(const qsl_sweep* sweep) {
  return sweep ? sweep->impl.best_alpha : 0.0;
}

double qsl_sweep_best_value(const qsl_sweep* sweep) {
  return sweep ? sweep->impl.best_value : 0.0;
}

int qsl_sweep_refined(const qsl_sweep* sweep) {
  return sweep && sweep->impl.refined ? 1 : 0;
}

qsl_status qsl_doublet_report(long long n, double lambda_re, double lambda_im,
                              double epsilon, double hbar, qsl_comparison* out,
                              qsl_sweep** sweep_out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    qsl::ComparisonReport rep =
        qsl::doublet_report(n, {lambda_re, lambda_im}, epsilon, hbar);
    out->mt = to_c(rep.mt);
    out->ml = to_c(rep.ml);
    out->alpha_half = to_c(rep.alpha_half);
    out->best_alpha = rep.sweep.best_alpha;
    out->best_value = rep.sweep.best_value;
    out->t1_present = rep.t1.has_value() ? 1 : 0;
    out->t1 = rep.t1 ? to_c(*rep.t1) : qsl_ortho_result{0, 0, 0, 0, 0};
    switch (rep.winner) {
      case qsl::BoundKind::MandelstamTamm: out->winner = QSL_BOUND_MT; break;
      case qsl::BoundKind::MargolusLevitin: out->winner = QSL_BOUND_ML; break;
      case qsl::BoundKind::Alpha: out->winner = QSL_BOUND_ALPHA; break;
    }
    out->winner_alpha = rep.winner_alpha;
    if (sweep_out) *sweep_out = new qsl_sweep{std::move(rep.sweep)};
  });
}

qsl_status qsl_density_create(size_t dim, const double* energies,
                              const double* entries_re, const double* entries_im,
                              const double* ground_energy, double hbar,
                              qsl_density** out) {
  if (!out) return null_argument("out");
  if (!energies || !entries_re || !entries_im) return null_argument("input arrays");
  return guarded([&] {
    std::vector<std::complex<double>> entries(dim * dim);
    for (size_t i = 0; i < dim * dim; ++i)
      entries[i] = {entries_re[i], entries_im[i]};
    std::optional<double> ground;
    if (ground_energy) ground = *ground_energy;
    *out = new qsl_density{qsl::DensityMatrix(
        std::move(entries), std::vector<double>(energies, energies + dim), ground,
        hbar)};
  });
}

void qsl_density_free(qsl_density* density) { delete density; }

size_t qsl_density_dim(const qsl_density* density) {
  return density ? density->impl.dim() : 0;
}

qsl_status qsl_density_entry(const qsl_density* density, size_t row, size_t col,
                             double* re, double* im) {
  if (!density) return null_argument("density");
  if (row >= density->impl.dim() || col >= density->impl.dim()) {
    g_last_error = "entry index out of range";
    return QSL_ERR_INVALID_ARGUMENT;
  }
  const std::complex<double> z = density->impl.entry(row, col);
  if (re) *re = z.real();
  if (im) *im = z.imag();
  return QSL_OK;
}

qsl_status qsl_fidelity(const qsl_density* rho, const qsl_density* sigma,
                        double* out) {
  if (!rho || !sigma) return null_argument("density");
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::fidelity(rho->impl, sigma->impl); });
}

qsl_status qsl_density_evolve(const qsl_density* rho, double t, qsl_density** out) {
  if (!rho) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new qsl_density{qsl::evolve(rho->impl, t)}; });
}

qsl_status qsl_purified_survival_amplitude(const qsl_density* rho, double t,
                                           double* re, double* im) {
  if (!rho) return null_argument("rho");
  if (!re || !im) return null_argument("re/im");
  return guarded([&] {
    const std::complex<double> a = qsl::purified_survival_amplitude(rho->impl, t);
    *re = a.real();
    *im = a.imag();
  });
}

qsl_status qsl_mixed_moment(const qsl_density* rho, double alpha, double* out) {
  if (!rho) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded([&] { *out = qsl::mixed_moment(rho->impl, alpha); });
}

qsl_status qsl_uhlmann_check(const qsl_density* rho, double t, double* fidelity,
                             double* overlap_sq, int* holds) {
  if (!rho) return null_argument("rho");
  return guarded([&] {
    const qsl::UhlmannCheck c = qsl::uhlmann_check(rho->impl, t);
    if (fidelity) *fidelity = c.fidelity;
    if (overlap_sq) *overlap_sq = c.overlap_sq;
    if (holds) *holds = c.holds ? 1 : 0;
  });
}

qsl_status qsl_density_horizon(const qsl_density* rho, qsl_horizon* out) {
  if (!rho) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded([&] { *out = to_c(qsl::density_horizon(rho->impl)); });
}

qsl_status qsl_density_recommended_grid_points(const qsl_density* rho, double t_max,
                                               long* out) {
  if (!rho) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded(
      [&] { *out = qsl::recommended_density_grid_points(rho->impl, t_max); });
}

qsl_status qsl_purified_first_passage(const qsl_density* rho, double t_max,
                                      long grid_points, double tolerance,
                                      qsl_ortho_result* out) {
  if (!rho) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = to_c(qsl::purified_first_passage(rho->impl, t_max, grid_points, tolerance));
  });
}

}  // extern "C"
