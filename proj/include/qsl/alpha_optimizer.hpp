#ifndef QSL_ALPHA_OPTIMIZER_HPP
#define QSL_ALPHA_OPTIMIZER_HPP

#include <complex>
#include <optional>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"

namespace qsl {

inline constexpr double kDefaultAlphaMin = 0.05;
inline constexpr double kDefaultAlphaMax = 20.0;
inline constexpr int kDefaultAlphaGrid = 64;

struct AlphaSample {
  double alpha;
  double bound_value;  // may be +infinity
};

struct AlphaSweepResult {
  std::vector<AlphaSample> samples;  // ascending alpha; always contains alpha = 1
  double best_alpha;
  double best_value;
  bool refined;  // golden-section refinement improved on the grid best
};

/// Evaluates the alpha bound on a log-spaced grid (alpha = 1 always included)
/// and golden-section-refines around the best grid point, bracketed by its
/// neighbors. The objective is not assumed unimodal, so the result is a
/// certified lower bound on the supremum, never an over-claim.
AlphaSweepResult sweep_alpha(const SpectralState& state,
                             double alpha_min = kDefaultAlphaMin,
                             double alpha_max = kDefaultAlphaMax,
                             int grid = kDefaultAlphaGrid);

struct ComparisonReport {
  BoundReport mt;
  BoundReport ml;
  BoundReport alpha_half;
  AlphaSweepResult sweep;
  std::optional<OrthogonalizationResult> t1;
  BoundKind winner;     // kind of the largest bound; +infinity wins every comparison
  double winner_alpha;  // meaningful when winner == Alpha
};

/// Builds the four-level doublet state, computes MT, ML, the alpha = 1/2
/// bound and a full sweep, locates the first orthogonalization time over the
/// recurrence period and checks that no bound exceeds it.
ComparisonReport doublet_report(long long n, std::complex<double> lambda,
                                double epsilon, double hbar = 1.0);

}  // namespace qsl

#endif
