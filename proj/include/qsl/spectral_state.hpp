#ifndef QSL_SPECTRAL_STATE_HPP
#define QSL_SPECTRAL_STATE_HPP

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "qsl/error.hpp"

namespace qsl {

struct Level {
  double energy;
  std::complex<double> amplitude;
};

/// Pure state with a finite energy spectrum: complex amplitudes over discrete
/// levels, an explicit ground energy and an explicit hbar. Immutable once
/// constructed, so values can be shared freely across threads.
class SpectralState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Sorts levels by energy, merges duplicate energies by amplitude addition
  /// and drops levels left with zero weight. Rejects states whose total
  /// weight differs from 1 by more than kNormTolerance (no silent
  /// renormalization) and levels lying below the ground energy. Without an
  /// explicit ground energy the lowest kept level energy is used.
  explicit SpectralState(std::vector<Level> levels,
                         std::optional<double> ground_energy = std::nullopt,
                         double hbar = 1.0);

  double hbar() const noexcept { return hbar_; }
  double ground_energy() const noexcept { return ground_energy_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }

  double min_energy() const noexcept { return levels_.front().energy; }
  double max_energy() const noexcept { return levels_.back().energy; }
  double spectral_span() const noexcept { return max_energy() - min_energy(); }

 private:
  std::vector<Level> levels_;  // strictly increasing energies
  double ground_energy_;
  double hbar_;
};

/// Four-level family {0, eps, n eps, (n+1) eps} with amplitudes a/sqrt(2) on
/// the low pair and b/sqrt(2) on the high pair, b = lambda / (sqrt(2) n^{1/4})
/// and a real chosen so that |a|^2 + |b|^2 = 1. Rejects lambda with
/// |lambda|^2/(2 sqrt(n)) > 1. The degenerate endpoints (lambda = 0, or
/// |b| = 1) collapse to equal-weight two-level states.
SpectralState make_doublet_state(long long n, std::complex<double> lambda,
                                 double epsilon, double hbar = 1.0);

/// Superposition of doublets sum_n (a_n/sqrt(2)) (|E_n> + |E_n + eps>).
/// The base energies must be >= 0 and the 2N energies {E_n, E_n + eps} must
/// all be distinct; amplitudes must be normalized. Ground energy is min E_n.
SpectralState make_paired_state(
    const std::vector<std::pair<double, std::complex<double>>>& pairs,
    double epsilon, double hbar = 1.0);

/// Equal-modulus two-level state (1/sqrt(2)) (e^{i phase0} |e0> + e^{i phase1} |e1>).
SpectralState make_intelligent_state(double e0, double e1, double phase0,
                                     double phase1, double hbar = 1.0);

}  // namespace qsl

#endif
