#include "qsl/alpha_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsl {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// golden-section maximization of the bound over log(alpha) on [lo, hi]
std::pair<double, double> golden_refine(const SpectralState& state, double lo,
                                        double hi) {
  double u_lo = std::log(lo), u_hi = std::log(hi);
  auto value = [&state](double u) { return alpha_bound(state, std::exp(u)).value; };
  double u1 = u_hi - kGoldenRatio * (u_hi - u_lo);
  double u2 = u_lo + kGoldenRatio * (u_hi - u_lo);
  double f1 = value(u1);
  double f2 = value(u2);
  for (int iter = 0; iter < 96 && (u_hi - u_lo) > 1e-10; ++iter) {
    if (f1 < f2) {
      u_lo = u1;
      u1 = u2; f1 = f2;
      u2 = u_lo + kGoldenRatio * (u_hi - u_lo);
      f2 = value(u2);
    } else {
      u_hi = u2;
      u2 = u1; f2 = f1;
      u1 = u_hi - kGoldenRatio * (u_hi - u_lo);
      f1 = value(u1);
    }
  }
  const double alpha = std::exp(0.5 * (u_lo + u_hi));
  return {alpha, alpha_bound(state, alpha).value};
}

}  // namespace

AlphaSweepResult sweep_alpha(const SpectralState& state, double alpha_min,
                             double alpha_max, int grid) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    throw Error(ErrorCode::InvalidRange, "need 0 < alpha_min < alpha_max");
  if (grid < 8)
    throw Error(ErrorCode::InvalidRange, "alpha grid needs at least 8 points");

  std::vector<double> alphas;
  alphas.reserve(grid + 1);
  const double u_lo = std::log(alpha_min), u_hi = std::log(alpha_max);
  for (int i = 0; i < grid; ++i)
    alphas.push_back(std::exp(u_lo + (u_hi - u_lo) * i / (grid - 1)));
  alphas.push_back(1.0);  // the Margolus-Levitin point is always sampled
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  AlphaSweepResult out;
  out.samples.reserve(alphas.size());
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out.samples.push_back({alphas[i], alpha_bound(state, alphas[i]).value});
    if (out.samples[i].bound_value > out.samples[best_i].bound_value) best_i = i;
  }
  out.best_alpha = out.samples[best_i].alpha;
  out.best_value = out.samples[best_i].bound_value;
  out.refined = false;

  if (std::isfinite(out.best_value)) {
    const double lo = out.samples[best_i > 0 ? best_i - 1 : best_i].alpha;
    const double hi =
        out.samples[best_i + 1 < out.samples.size() ? best_i + 1 : best_i].alpha;
    if (hi > lo) {
      const auto [alpha, value] = golden_refine(state, lo, hi);
      if (value > out.best_value) {
        out.best_alpha = alpha;
        out.best_value = value;
        out.refined = true;
      }
    }
  }
  return out;
}

ComparisonReport doublet_report(long long n, std::complex<double> lambda,
                                double epsilon, double hbar) {
  const SpectralState state = make_doublet_state(n, lambda, epsilon, hbar);

  ComparisonReport report;
  report.mt = mt_bound(state);
  report.ml = ml_bound(state);
  report.alpha_half = alpha_bound(state, 0.5);
  report.sweep = sweep_alpha(state);

  const HorizonEstimate horizon = default_horizon(state);
  const long grid = recommended_grid_points(state, horizon.t_max);
  report.t1 = orthogonalization_time(state, horizon.t_max, grid);

  if (report.t1->reached) {
    const double cap = report.t1->t_first + 1e-6;
    for (double v : {report.mt.value, report.ml.value, report.alpha_half.value,
                     report.sweep.best_value}) {
      if (std::isfinite(v) && v > cap)
        throw std::logic_error(
            "speed-limit bound exceeds the measured orthogonalization time");
    }
  }

  report.winner = BoundKind::MandelstamTamm;
  report.winner_alpha = 0.0;
  double best = report.mt.value;
  if (report.ml.value >= best) {
    best = report.ml.value;
    report.winner = BoundKind::MargolusLevitin;
    report.winner_alpha = 1.0;
  }
  if (report.alpha_half.value >= best) {
    best = report.alpha_half.value;
    report.winner = BoundKind::Alpha;
    report.winner_alpha = 0.5;
  }
  if (report.sweep.best_value >= best) {
    report.winner = BoundKind::Alpha;
    report.winner_alpha = report.sweep.best_alpha;
  }
  return report;
}

}  // namespace qsl
