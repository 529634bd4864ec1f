#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "kahan.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

struct PhaseTerm {
  double weight;  // |c_k|^2
  double omega;   // E_k / hbar
};

std::vector<PhaseTerm> phase_terms(const SpectralState& state) {
  std::vector<PhaseTerm> terms;
  terms.reserve(state.size());
  for (const Level& l : state.levels())
    terms.push_back({std::norm(l.amplitude), l.energy / state.hbar()});
  return terms;
}

std::complex<double> amplitude_at(const std::vector<PhaseTerm>& terms, double t) {
  detail::Accumulator re, im;
  for (const PhaseTerm& p : terms) {
    const double theta = p.omega * t;
    re.add(p.weight * std::cos(theta));
    im.add(-p.weight * std::sin(theta));
  }
  return {re.total(), im.total()};
}

constexpr int kMaxRefineIterations = 200;
constexpr double kRefineRelTol = 1e-12;

struct RefineOutcome {
  double t;
  double value;
  bool certified_above;  // Lipschitz floor proved the bracket cannot reach tolerance
};

// Ternary search for the minimum of amp_sq on [lo, hi]. With early exit
// enabled the search stops as soon as sqrt(best) - L * width > tolerance,
// which certifies that no point of the remaining bracket dips below tolerance.
RefineOutcome refine_minimum(const std::function<double(double)>& amp_sq,
                             double lo, double hi, double tolerance,
                             double amp_lipschitz, bool allow_early_exit) {
  double best_t = 0.5 * (lo + hi);
  double best_v = amp_sq(best_t);
  for (int iter = 0; iter < kMaxRefineIterations; ++iter) {
    const double width = hi - lo;
    if (width <= kRefineRelTol * std::max(std::abs(hi), 1e-300)) break;
    if (allow_early_exit &&
        std::sqrt(std::max(0.0, best_v)) - amp_lipschitz * width > tolerance)
      return {best_t, best_v, true};
    const double m1 = lo + width / 3.0;
    const double m2 = hi - width / 3.0;
    const double f1 = amp_sq(m1);
    const double f2 = amp_sq(m2);
    if (f1 < best_v) { best_v = f1; best_t = m1; }
    if (f2 < best_v) { best_v = f2; best_t = m2; }
    if (f1 < f2)
      hi = m2;
    else
      lo = m1;
  }
  return {best_t, best_v, false};
}

// Continued-fraction reconstruction of x as p/q with q <= max_den and
// relative error <= rel_tol. Returns nothing when no such fraction exists.
std::optional<std::pair<long long, long long>> rationalize(double x, double rel_tol,
                                                           long long max_den) {
  if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  const double abs_tol = rel_tol * std::max(1.0, x);
  long long p_prev = 1, q_prev = 0;
  long long p_cur = static_cast<long long>(std::floor(x)), q_cur = 1;
  double frac = x - std::floor(x);
  if (std::abs(x - static_cast<double>(p_cur)) <= abs_tol && p_cur > 0)
    return std::make_pair(p_cur, q_cur);
  for (int depth = 0; depth < 64; ++depth) {
    if (frac < 1e-15) break;
    const double y = 1.0 / frac;
    const double fl = std::floor(y);
    if (fl > 1e18) break;
    const long long a = static_cast<long long>(fl);
    frac = y - fl;
    const long long p_next = a * p_cur + p_prev;
    const long long q_next = a * q_cur + q_prev;
    if (q_next > max_den) return std::nullopt;
    p_prev = p_cur; q_prev = q_cur;
    p_cur = p_next; q_cur = q_next;
    if (std::abs(x - static_cast<double>(p_cur) / static_cast<double>(q_cur)) <= abs_tol)
      return std::make_pair(p_cur, q_cur);
  }
  return std::nullopt;
}

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::complex<double> survival_amplitude(const SpectralState& state, double t) {
  return amplitude_at(phase_terms(state), t);
}

std::vector<AmplitudeSample> sample_survival(const SpectralState& state,
                                             std::span<const double> times) {
  const auto terms = phase_terms(state);
  std::vector<AmplitudeSample> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({t, amplitude_at(terms, t)});
  return out;
}

OrthogonalizationResult locate_first_minimum(
    const std::function<double(double)>& amp_sq, double amp_lipschitz,
    double t_max, long grid_points, double tolerance) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorCode::InvalidHorizon, "scan horizon must be positive and finite");
  if (grid_points < 16)
    throw Error(ErrorCode::InvalidArgument, "grid needs at least 16 points");
  if (!(tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  const double n = static_cast<double>(grid_points);
  const double tol_sq = tolerance * tolerance;
  auto grid_t = [&](long i) { return t_max * (static_cast<double>(i) / n); };

  double v_left = amp_sq(0.0);
  double v_mid = amp_sq(grid_t(1));

  // best minimum seen so far, kept in case nothing reaches the tolerance
  double best_t = grid_t(1);
  double best_v = v_mid;
  double best_lo = 0.0, best_hi = std::min(grid_t(2), t_max);
  bool best_is_bracket = false;

  for (long i = 1; i <= grid_points; ++i) {
    const bool last = (i == grid_points);
    const double v_right =
        last ? std::numeric_limits<double>::infinity() : amp_sq(grid_t(i + 1));

    if (v_mid < v_left && v_mid <= v_right) {
      const double lo = grid_t(i - 1);
      const double hi = last ? grid_t(i) : grid_t(i + 1);
      const RefineOutcome r =
          refine_minimum(amp_sq, lo, hi, tolerance, amp_lipschitz, true);
      if (!r.certified_above && r.value <= tol_sq)
        return {r.t, std::sqrt(std::max(0.0, r.value)), true, t_max, grid_points};
      if (r.value < best_v) {
        best_v = r.value; best_t = r.t;
        best_lo = lo; best_hi = hi;
        best_is_bracket = true;
      }
    } else if (v_mid < best_v) {
      best_v = v_mid;
      best_t = grid_t(i);
      best_lo = grid_t(i - 1);
      best_hi = last ? grid_t(i) : grid_t(i + 1);
      best_is_bracket = false;
    }
    v_left = v_mid;
    v_mid = v_right;
  }

  // No candidate reached the tolerance. Polish the best bracket without the
  // early exit so the reported residual is the fully refined minimum.
  if (best_is_bracket) {
    const RefineOutcome r =
        refine_minimum(amp_sq, best_lo, best_hi, tolerance, amp_lipschitz, false);
    if (r.value < best_v) { best_v = r.value; best_t = r.t; }
  }
  const double residual = std::sqrt(std::max(0.0, best_v));
  return {best_t, residual, residual <= tolerance, t_max, grid_points};
}

OrthogonalizationResult orthogonalization_time(const SpectralState& state,
                                               double t_max, long grid_points,
                                               double tolerance) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorCode::InvalidHorizon, "t_max must be positive and finite");
  if (grid_points < 16)
    throw Error(ErrorCode::InvalidArgument, "grid_points must be at least 16");
  const double span = state.spectral_span();
  if (span > 0.0) {
    const double limit = kPi * state.hbar() / (4.0 * span);
    if (t_max / static_cast<double>(grid_points) > limit)
      throw Error(ErrorCode::GridTooCoarse,
                  "grid spacing exceeds pi hbar / (4 (E_max - E_min)): "
                  "zeros could slip between samples");
  }

  const auto terms = phase_terms(state);
  auto amp_sq = [&terms](double t) { return std::norm(amplitude_at(terms, t)); };
  const double lipschitz = span / (2.0 * state.hbar());
  return locate_first_minimum(amp_sq, lipschitz, t_max, grid_points, tolerance);
}

long recommended_grid_points(const SpectralState& state, double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorCode::InvalidHorizon, "t_max must be positive and finite");
  const double span = state.spectral_span();
  if (span == 0.0) return 16;
  const double limit = kPi * state.hbar() / (4.0 * span);
  const double points = std::ceil(t_max / limit) + 1.0;
  if (points > 2e9)
    throw Error(ErrorCode::GridTooCoarse,
                "sampling rule needs more than 2e9 grid points over this horizon");
  return std::max(16L, static_cast<long>(points));
}

HorizonEstimate horizon_from_spectrum(std::span<const double> energies,
                                      std::span<const double> weights,
                                      double hbar) {
  if (energies.size() != weights.size() || energies.empty())
    throw Error(ErrorCode::InvalidArgument, "energies and weights must align");
  if (!(hbar > 0.0))
    throw Error(ErrorCode::InvalidArgument, "hbar must be positive");

  std::vector<double> distinct(energies.begin(), energies.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2)
    throw Error(ErrorCode::SingleLevel,
                "spectrum has a single distinct energy: no horizon to infer");

  std::vector<double> gaps;
  gaps.reserve(distinct.size() - 1);
  for (std::size_t i = 1; i < distinct.size(); ++i)
    gaps.push_back(distinct[i] - distinct[i - 1]);
  const double gap_min = *std::min_element(gaps.begin(), gaps.end());

  // gap ratios -> small rationals -> common divisor g with every gap = k g
  constexpr double kRatioTol = 1e-9;
  constexpr long long kMaxDenominator = 1024;
  constexpr long long kMaxLcm = 1'000'000;
  long long lcm = 1;
  bool commensurate = true;
  for (double gap : gaps) {
    const auto frac = rationalize(gap / gap_min, kRatioTol, kMaxDenominator);
    if (!frac) {
      commensurate = false;
      break;
    }
    lcm = lcm / gcd_ll(lcm, frac->second) * frac->second;
    if (lcm > kMaxLcm) {
      commensurate = false;
      break;
    }
  }
  if (commensurate) {
    const double g = gap_min / static_cast<double>(lcm);
    for (double gap : gaps) {
      const double r = gap / g;
      if (std::abs(r - std::round(r)) > kRatioTol * std::max(1.0, r)) {
        commensurate = false;
        break;
      }
    }
    if (commensurate) return {2.0 * kPi * hbar / g, true, g};
  }

  // non-periodic: a heuristic horizon of 20 mean-gap half-periods
  const double e_min = distinct.front();
  double wsum = 0.0, mean_gap = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    wsum += weights[i];
    mean_gap += weights[i] * (energies[i] - e_min);
  }
  if (!(wsum > 0.0) || !(mean_gap > 0.0))
    throw Error(ErrorCode::SingleLevel,
                "spectral weight is concentrated on one energy: no horizon to infer");
  mean_gap /= wsum;
  return {20.0 * kPi * hbar / mean_gap, false, 0.0};
}

HorizonEstimate default_horizon(const SpectralState& state) {
  if (state.size() < 2)
    throw Error(ErrorCode::SingleLevel,
                "single-level states are stationary: no horizon to infer");
  std::vector<double> energies, weights;
  energies.reserve(state.size());
  weights.reserve(state.size());
  for (const Level& l : state.levels()) {
    energies.push_back(l.energy);
    weights.push_back(std::norm(l.amplitude));
  }
  return horizon_from_spectrum(energies, weights, state.hbar());
}

}  // namespace qsl
