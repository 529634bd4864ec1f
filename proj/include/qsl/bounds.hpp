#ifndef QSL_BOUNDS_HPP
#define QSL_BOUNDS_HPP

#include "qsl/spectral_state.hpp"

namespace qsl {

enum class BoundKind { MandelstamTamm, MargolusLevitin, Alpha };

/// One lower bound on the orthogonalization time together with the energy
/// moment it was computed from. value is +infinity iff the moment vanishes
/// (the state never orthogonalizes).
struct BoundReport {
  BoundKind kind;
  double alpha;        // exponent for Alpha, 1 for MargolusLevitin, unused for MandelstamTamm
  double value;        // time units, may be +infinity
  double moment_used;  // dE for MT, <E - E0> for ML, <(E - E0)^alpha> for Alpha
};

/// <(E - E0)^alpha>, alpha > 0. Compensated summation; exact for finite spectra.
double moment(const SpectralState& state, double alpha);

/// sqrt(<E^2> - <E>^2) against raw energies; tiny negative round-off under
/// the root clamps to 0.
double dispersion(const SpectralState& state);

BoundReport mt_bound(const SpectralState& state);  // pi hbar / (2 dE)
BoundReport ml_bound(const SpectralState& state);  // pi hbar / (2 <E - E0>)

/// pi hbar / (2^{1/alpha} <(E - E0)^alpha>^{1/alpha}). Identical arithmetic
/// path to ml_bound at alpha = 1.
BoundReport alpha_bound(const SpectralState& state, double alpha);

}  // namespace qsl

#endif
