#include "qsl/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kahan.hpp"

namespace qsl {

double moment(const SpectralState& state, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  const double e0 = state.ground_energy();
  detail::Accumulator acc;
  for (const Level& l : state.levels())
    acc.add(std::norm(l.amplitude) * std::pow(l.energy - e0, alpha));
  return acc.total();
}

double dispersion(const SpectralState& state) {
  detail::Accumulator mean;
  for (const Level& l : state.levels())
    mean.add(std::norm(l.amplitude) * l.energy);
  const double mu = mean.total();

  detail::Accumulator var;  // centered second moment, non-negative up to round-off
  for (const Level& l : state.levels()) {
    const double d = l.energy - mu;
    var.add(std::norm(l.amplitude) * d * d);
  }
  return std::sqrt(std::max(0.0, var.total()));
}

BoundReport mt_bound(const SpectralState& state) {
  const double de = dispersion(state);
  const double value = de > 0.0
                           ? std::numbers::pi * state.hbar() / (2.0 * de)
                           : std::numeric_limits<double>::infinity();
  return {BoundKind::MandelstamTamm, 0.0, value, de};
}

BoundReport alpha_bound(const SpectralState& state, double alpha) {
  const double m = moment(state, alpha);
  if (!std::isfinite(m))
    throw Error(ErrorCode::InvalidArgument,
                "<(E - E0)^alpha> overflows double precision at this alpha");
  double value;
  if (m == 0.0) {
    value = std::numeric_limits<double>::infinity();
  } else {
    const double inv = 1.0 / alpha;
    value = std::numbers::pi * state.hbar() / (std::pow(2.0, inv) * std::pow(m, inv));
  }
  return {BoundKind::Alpha, alpha, value, m};
}

BoundReport ml_bound(const SpectralState& state) {
  // same arithmetic path as the alpha = 1 bound, so the two agree bit-for-bit
  BoundReport report = alpha_bound(state, 1.0);
  report.kind = BoundKind::MargolusLevitin;
  return report;
}

}  // namespace qsl
