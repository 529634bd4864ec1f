#include "qsl/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kahan.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi u) and cos(pi u) with exact values at integer and half-integer u.
// The quadrant subtractions are exact by Sterbenz, so sin_pi(1) == 0 and
// cos_pi(1) == -1 instead of the ~1e-16 leakage of sin(pi) at double pi.
double sin_pi(double u) {
  double r = std::fmod(u, 2.0);
  if (r < 0.0) r += 2.0;  // r in [0, 2)
  if (r < 0.5) return std::sin(kPi * r);
  if (r < 1.0) return std::cos(kPi * (r - 0.5));
  if (r < 1.5) return -std::sin(kPi * (r - 1.0));
  return -std::cos(kPi * (r - 1.5));
}

double cos_pi(double u) {
  double r = std::fmod(u, 2.0);
  if (r < 0.0) r += 2.0;
  if (r < 0.5) return std::cos(kPi * r);
  if (r < 1.0) return -std::sin(kPi * (r - 0.5));
  if (r < 1.5) return -std::cos(kPi * (r - 1.0));
  return std::sin(kPi * (r - 1.5));
}

// plain ternary minimization, no Lipschitz early exit
std::pair<double, double> refine_grid_minimum(double alpha, double lo, double hi) {
  double best_x = 0.5 * (lo + hi);
  double best_v = alpha_minorant_residual(alpha, best_x);
  for (int iter = 0; iter < 200; ++iter) {
    const double width = hi - lo;
    if (width <= 1e-12 * std::max(hi, 1e-300)) break;
    const double m1 = lo + width / 3.0;
    const double m2 = hi - width / 3.0;
    const double f1 = alpha_minorant_residual(alpha, m1);
    const double f2 = alpha_minorant_residual(alpha, m2);
    if (f1 < best_v) { best_v = f1; best_x = m1; }
    if (f2 < best_v) { best_v = f2; best_x = m2; }
    if (f1 < f2)
      hi = m2;
    else
      lo = m1;
  }
  return {best_x, best_v};
}

}  // namespace

double alpha_minorant_residual(double alpha, double x) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(x >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "x must be non-negative");
  const double pi_alpha = std::pow(kPi, alpha);
  const double u = x / kPi;
  return std::pow(x, alpha) - 0.5 * pi_alpha + 0.5 * pi_alpha * cos_pi(u) +
         alpha * (pi_alpha / kPi) * sin_pi(u);
}

MinorantCertificate verify_alpha_minorant(double alpha, double x_max, long samples) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (samples < 1000)
    throw Error(ErrorCode::InvalidArgument, "verification needs at least 1000 samples");
  if (!(x_max >= 2.0 * kPi))
    throw Error(ErrorCode::InvalidArgument, "x_max must cover at least [0, 2 pi]");

  double min_v = alpha_minorant_residual(alpha, 0.0);
  double min_x = 0.0;
  auto consider = [&](double x, double v) {
    if (v < min_v) {
      min_v = v;
      min_x = x;
    }
  };
  consider(kPi, alpha_minorant_residual(alpha, kPi));  // the analytic touch point

  const double n = static_cast<double>(samples);
  auto grid_x = [&](long i) { return x_max * (static_cast<double>(i) / n); };

  double v_left = alpha_minorant_residual(alpha, 0.0);
  double v_mid = alpha_minorant_residual(alpha, grid_x(1));
  for (long i = 1; i <= samples; ++i) {
    const bool last = (i == samples);
    const double v_right = last ? std::numeric_limits<double>::infinity()
                                : alpha_minorant_residual(alpha, grid_x(i + 1));
    consider(grid_x(i), v_mid);
    if (v_mid < v_left && v_mid <= v_right) {
      const auto [x, v] =
          refine_grid_minimum(alpha, grid_x(i - 1), last ? grid_x(i) : grid_x(i + 1));
      consider(x, v);
    }
    v_left = v_mid;
    v_mid = v_right;
  }

  const double pi_alpha = std::pow(kPi, alpha);
  return {alpha,
          alpha * (pi_alpha / kPi),
          0.5 * pi_alpha,
          0.5 * pi_alpha,
          x_max,
          samples,
          min_v,
          min_x,
          min_v >= -kMinorantTolerance};
}

bool check_minorant(std::span<const double> xs, std::span<const double> fs,
                    double sin_coeff, double cos_coeff) {
  if (xs.size() != fs.size() || xs.size() < 2)
    throw Error(ErrorCode::InvalidArgument,
                "sample arrays must align and hold at least two points");
  if (xs.front() != 0.0)
    throw Error(ErrorCode::InvalidArgument, "samples must start at x = 0");
  const double max_spacing = (kPi / 100.0) * (1.0 + 1e-12);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "sample points must increase strictly");
    if (xs[i] - xs[i - 1] > max_spacing)
      throw Error(ErrorCode::InvalidArgument, "sample spacing exceeds pi/100");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double residual =
        fs[i] - sin_coeff * std::sin(xs[i]) - cos_coeff * std::cos(xs[i]);
    if (residual < -kMinorantTolerance) return false;
  }
  return true;
}

MinorantFunction MinorantFunction::alpha_family(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  MinorantFunction f;
  f.alpha_ = alpha;
  return f;
}

MinorantFunction MinorantFunction::tabulated(std::vector<double> xs,
                                             std::vector<double> fs) {
  if (xs.size() != fs.size() || xs.size() < 2)
    throw Error(ErrorCode::InvalidArgument,
                "tabulated function needs aligned arrays of >= 2 points");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "table abscissae must increase strictly");
  MinorantFunction f;
  f.tabulated_ = true;
  f.xs_ = std::move(xs);
  f.fs_ = std::move(fs);
  return f;
}

double MinorantFunction::operator()(double x) const {
  if (!tabulated_)
    return std::pow(x, alpha_) - 0.5 * std::pow(kPi, alpha_);
  if (x < xs_.front() || x > xs_.back())
    throw Error(ErrorCode::InvalidArgument,
                "evaluation point lies outside the tabulated range");
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return fs_.front();
  const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return fs_[lo] + w * (fs_[hi] - fs_[lo]);
}

double minorant_expectation(const SpectralState& state, double t,
                            const MinorantFunction& f, double sin_coeff,
                            double cos_coeff) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorCode::InvalidArgument, "t must be positive");

  const double e0 = state.ground_energy();
  const double x_span =
      std::max(t * (state.max_energy() - e0) / state.hbar(), kPi / 100.0);
  if (x_span > 1e7)
    throw Error(ErrorCode::InvalidArgument,
                "t (E_max - E0) / hbar too large to re-verify the minorant grid");
  // slightly denser than pi/100 so rounding jitter in the grid coordinates
  // cannot push a cell over the spacing limit
  const long cells = std::max<long>(
      2, static_cast<long>(std::ceil(x_span / (kPi / 100.0 * (1.0 - 1e-6)))));
  std::vector<double> xs(cells + 1), fs(cells + 1);
  for (long i = 0; i <= cells; ++i) {
    xs[i] = x_span * (static_cast<double>(i) / static_cast<double>(cells));
    fs[i] = f(xs[i]);
  }
  if (!check_minorant(xs, fs, sin_coeff, cos_coeff))
    throw Error(ErrorCode::MinorantNotVerified,
                "minorant inequality fails on [0, t (E_max - E0) / hbar]");

  detail::Accumulator acc;
  for (const Level& l : state.levels()) {
    const double x = t * (l.energy - e0) / state.hbar();
    acc.add(std::norm(l.amplitude) *
            (f(x) - sin_coeff * std::sin(x) - cos_coeff * std::cos(x)));
  }
  return acc.total();
}

}  // namespace qsl
