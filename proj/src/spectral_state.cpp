#include "qsl/spectral_state.hpp"

#include <algorithm>
#include <cmath>

namespace qsl {

SpectralState::SpectralState(std::vector<Level> levels,
                             std::optional<double> ground_energy, double hbar)
    : hbar_(hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw Error(ErrorCode::InvalidArgument, "hbar must be positive and finite");
  if (levels.empty())
    throw Error(ErrorCode::InvalidArgument, "state needs at least one level");
  for (const Level& l : levels) {
    if (!std::isfinite(l.energy) || !std::isfinite(l.amplitude.real()) ||
        !std::isfinite(l.amplitude.imag()))
      throw Error(ErrorCode::InvalidArgument,
                  "level energies and amplitudes must be finite");
  }

  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });

  levels_.reserve(levels.size());
  for (const Level& l : levels) {
    if (!levels_.empty() && levels_.back().energy == l.energy)
      levels_.back().amplitude += l.amplitude;
    else
      levels_.push_back(l);
  }
  std::erase_if(levels_, [](const Level& l) { return std::norm(l.amplitude) == 0.0; });
  if (levels_.empty())
    throw Error(ErrorCode::Constraint, "state carries no weight on any level");

  double total = 0.0;
  for (const Level& l : levels_) total += std::norm(l.amplitude);
  if (std::abs(total - 1.0) > kNormTolerance)
    throw Error(ErrorCode::Constraint,
                "state is not normalized: sum |amplitude|^2 = " + std::to_string(total));

  ground_energy_ = ground_energy.value_or(levels_.front().energy);
  if (!std::isfinite(ground_energy_))
    throw Error(ErrorCode::InvalidArgument, "ground energy must be finite");
  if (levels_.front().energy < ground_energy_)
    throw Error(ErrorCode::Constraint,
                "level energy lies below the ground energy");
}

SpectralState make_doublet_state(long long n, std::complex<double> lambda,
                                 double epsilon, double hbar) {
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "doublet family requires n >= 2");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");

  const double nd = static_cast<double>(n);
  // |b|^2 = |lambda|^2 / (2 sqrt(n)) computed directly, so the boundary
  // |b|^2 = 1 (where a vanishes exactly) survives rounding
  const double b_sq = std::norm(lambda) / (2.0 * std::sqrt(nd));
  if (b_sq > 1.0)
    throw Error(ErrorCode::Constraint,
                "|lambda|^2 / (2 sqrt(n)) exceeds 1: no admissible low-pair amplitude");
  const std::complex<double> b =
      (b_sq == 0.0) ? std::complex<double>(0.0)
                    : lambda * (std::sqrt(b_sq) / std::abs(lambda));
  const double a = std::sqrt(std::max(0.0, 1.0 - b_sq));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> low = a * inv_sqrt2;
  const std::complex<double> high = b * inv_sqrt2;
  return SpectralState({{0.0, low},
                        {epsilon, low},
                        {nd * epsilon, high},
                        {(nd + 1.0) * epsilon, high}},
                       std::nullopt, hbar);
}

SpectralState make_paired_state(
    const std::vector<std::pair<double, std::complex<double>>>& pairs,
    double epsilon, double hbar) {
  if (pairs.empty())
    throw Error(ErrorCode::InvalidArgument, "need at least one doublet");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");

  double total = 0.0;
  double ground = pairs.front().first;
  for (const auto& [base, amp] : pairs) {
    if (!(base >= 0.0) || !std::isfinite(base))
      throw Error(ErrorCode::InvalidArgument, "doublet base energies must be >= 0");
    total += std::norm(amp);
    ground = std::min(ground, base);
  }
  if (std::abs(total - 1.0) > SpectralState::kNormTolerance)
    throw Error(ErrorCode::Constraint, "doublet amplitudes are not normalized");

  std::vector<double> all;
  all.reserve(2 * pairs.size());
  for (const auto& [base, amp] : pairs) {
    all.push_back(base);
    all.push_back(base + epsilon);
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error(ErrorCode::Constraint,
                "overlapping doublet energies: the pairs are ambiguous");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Level> levels;
  levels.reserve(2 * pairs.size());
  for (const auto& [base, amp] : pairs) {
    levels.push_back({base, amp * inv_sqrt2});
    levels.push_back({base + epsilon, amp * inv_sqrt2});
  }
  return SpectralState(std::move(levels), ground, hbar);
}

SpectralState make_intelligent_state(double e0, double e1, double phase0,
                                     double phase1, double hbar) {
  if (!(e1 > e0))
    throw Error(ErrorCode::InvalidArgument, "e1 must exceed e0");
  const double mod = 1.0 / std::sqrt(2.0);
  return SpectralState({{e0, std::polar(mod, phase0)}, {e1, std::polar(mod, phase1)}},
                       std::nullopt, hbar);
}

}  // namespace qsl
