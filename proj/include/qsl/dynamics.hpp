#ifndef QSL_DYNAMICS_HPP
#define QSL_DYNAMICS_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qsl/spectral_state.hpp"

namespace qsl {

struct AmplitudeSample {
  double t;
  std::complex<double> value;  // |value| <= 1 up to round-off
};

struct OrthogonalizationResult {
  double t_first;      // first near-zero of |A(t)|, or the best minimum found
  double residual;     // |A(t_first)|
  bool reached;        // residual <= tolerance
  double scan_horizon; // the t_max actually scanned
  long grid_points;
};

struct HorizonEstimate {
  double t_max;
  bool periodic;       // gaps share a common divisor g (recurrence period 2 pi hbar / g)
  double gap_divisor;  // g when periodic, otherwise 0
};

inline constexpr double kOrthogonalityTolerance = 1e-9;

/// Survival amplitude sum_k |c_k|^2 exp(-i t E_k / hbar).
std::complex<double> survival_amplitude(const SpectralState& state, double t);

std::vector<AmplitudeSample> sample_survival(const SpectralState& state,
                                             std::span<const double> times);

/// Scans |A(t)|^2 on a uniform grid over (0, t_max], refines every grid-local
/// minimum by ternary search in time order and returns the first whose value
/// dips below tolerance^2. When none does, reports the smallest minimum found
/// with reached = false; near-misses are never promoted.
///
/// The grid spacing must satisfy dt <= pi hbar / (4 (E_max - E_min)), i.e. at
/// least eight samples per fastest oscillation, otherwise GridTooCoarse.
OrthogonalizationResult orthogonalization_time(
    const SpectralState& state, double t_max, long grid_points,
    double tolerance = kOrthogonalityTolerance);

/// Smallest grid satisfying the sampling rule for this state and horizon.
long recommended_grid_points(const SpectralState& state, double t_max);

/// Full recurrence period 2 pi hbar / g when all energy gaps are integer
/// multiples of a common divisor g (rational reconstruction of gap ratios,
/// relative tolerance 1e-9); otherwise a heuristic multiple of the
/// weighted-mean-gap time, flagged non-periodic.
HorizonEstimate default_horizon(const SpectralState& state);

/// Shared by pure states and density matrices: energies need not be sorted or
/// distinct, weights align with energies and feed the non-periodic heuristic.
HorizonEstimate horizon_from_spectrum(std::span<const double> energies,
                                      std::span<const double> weights,
                                      double hbar);

/// Generic first-minimum scanner behind orthogonalization_time and the
/// mixed-state first-passage search. amp_sq evaluates |A(t)|^2 and
/// amp_lipschitz bounds |d|A|/dt|; the bound lets hopeless brackets be
/// skipped without full refinement.
OrthogonalizationResult locate_first_minimum(
    const std::function<double(double)>& amp_sq, double amp_lipschitz,
    double t_max, long grid_points, double tolerance);

}  // namespace qsl

#endif
