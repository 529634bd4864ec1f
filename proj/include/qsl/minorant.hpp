#ifndef QSL_MINORANT_HPP
#define QSL_MINORANT_HPP

#include <span>
#include <vector>

#include "qsl/spectral_state.hpp"

namespace qsl {

inline constexpr double kMinorantTolerance = 1e-9;

/// Grid evidence that the residual
///   x^alpha - pi^alpha/2 + (pi^alpha/2) cos x + alpha pi^{alpha-1} sin x
/// stays non-negative on [0, x_max].
struct MinorantCertificate {
  double alpha;
  double sin_coeff;   // alpha pi^{alpha-1}
  double cos_coeff;   // pi^alpha / 2
  double offset;      // pi^alpha / 2
  double x_max;
  long samples;
  double min_value;    // smallest residual found (grid + refinement)
  double min_location; // where it was found
  bool verified;       // min_value >= -kMinorantTolerance
};

/// Residual of the power-trigonometric inequality at x >= 0, alpha > 0.
/// Evaluated in the x/pi parameterization so the analytic zeros at x = 0 and
/// x = pi cancel exactly instead of inheriting the rounding of pi.
double alpha_minorant_residual(double alpha, double x);

/// Uniform grid of `samples` points over [0, x_max] (>= 1000 points,
/// x_max >= 2 pi), the analytic zeros {0, pi}, and ternary refinement around
/// every grid-local minimum.
MinorantCertificate verify_alpha_minorant(double alpha, double x_max, long samples);

/// True iff f(x) - A sin x - B cos x >= -kMinorantTolerance at every sample.
/// xs must start at 0, increase strictly, and be spaced at most pi/100 apart.
bool check_minorant(std::span<const double> xs, std::span<const double> fs,
                    double sin_coeff, double cos_coeff);

/// f for minorant_expectation: the built-in family f(x) = x^alpha - pi^alpha/2
/// (whose minorant coefficients are A = -alpha pi^{alpha-1}, B = -pi^alpha/2),
/// or a tabulated function evaluated by linear interpolation.
class MinorantFunction {
 public:
  static MinorantFunction alpha_family(double alpha);
  static MinorantFunction tabulated(std::vector<double> xs, std::vector<double> fs);

  double operator()(double x) const;
  bool is_tabulated() const noexcept { return tabulated_; }
  double alpha() const noexcept { return alpha_; }

 private:
  MinorantFunction() = default;
  bool tabulated_ = false;
  double alpha_ = 0.0;
  std::vector<double> xs_, fs_;
};

/// <f(t(H-E0)/hbar)> - A <sin(t(H-E0)/hbar)> - B <cos(t(H-E0)/hbar)> as a
/// finite sum over levels. First re-checks the minorant inequality over
/// [0, t (E_max - E0)/hbar] and throws MinorantNotVerified when it fails;
/// under that precondition the result is >= -kMinorantTolerance.
double minorant_expectation(const SpectralState& state, double t,
                            const MinorantFunction& f, double sin_coeff,
                            double cos_coeff);

}  // namespace qsl

#endif
