#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qsl/minorant.hpp"
#include "qsl/spectral_state.hpp"

using namespace qsl;
using std::numbers::pi;

namespace {

const double kAlphaGrid[] = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};

std::vector<double> uniform_grid(double x_max, std::size_t cells) {
  std::vector<double> xs(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    xs[i] = x_max * (static_cast<double>(i) / static_cast<double>(cells));
  return xs;
}

}  // namespace

TEST_CASE("residual vanishes at the analytic zeros") {
  for (double alpha : kAlphaGrid) {
    CHECK(std::abs(alpha_minorant_residual(alpha, 0.0)) <= 1e-12);
    CHECK(std::abs(alpha_minorant_residual(alpha, pi)) <= 1e-12);
  }
}

TEST_CASE("residual at hand-computed points") {
  // alpha = 1, x = 3 pi / 2: 3pi/2 - pi/2 + 0 - 1 = pi - 1
  CHECK(alpha_minorant_residual(1.0, 1.5 * pi) ==
        doctest::Approx(pi - 1.0).epsilon(1e-13));
  CHECK_THROWS_AS(alpha_minorant_residual(0.0, 1.0), Error);
  CHECK_THROWS_AS(alpha_minorant_residual(1.0, -0.5), Error);
}

TEST_CASE("alpha = 1 matches the plain trigonometric form pointwise") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xs(0.0, 60.0);
  for (int i = 0; i < 500; ++i) {
    const double x = xs(rng);
    const double plain = x - pi / 2.0 + (pi / 2.0) * std::cos(x) + std::sin(x);
    CHECK(std::abs(alpha_minorant_residual(1.0, x) - plain) <= 1e-12);
  }
}

TEST_CASE("grid verification across the alpha grid") {
  for (double alpha : {1.0, 0.5, 10.0}) {
    const MinorantCertificate cert = verify_alpha_minorant(alpha, 20.0 * pi, 100000);
    CHECK(cert.verified);
    CHECK(cert.min_value >= -kMinorantTolerance);
    CHECK(cert.alpha == alpha);
    CHECK(cert.samples == 100000);
    // coefficient fields carry the family parameters
    CHECK(cert.sin_coeff == doctest::Approx(alpha * std::pow(pi, alpha - 1.0)).epsilon(1e-12));
    CHECK(cert.cos_coeff == doctest::Approx(0.5 * std::pow(pi, alpha)).epsilon(1e-12));
    CHECK(cert.verified == (cert.min_value >= -1e-9));
  }
}

TEST_CASE("verification preconditions") {
  CHECK_THROWS_AS(verify_alpha_minorant(1.0, 20.0 * pi, 500), Error);
  CHECK_THROWS_AS(verify_alpha_minorant(1.0, pi, 100000), Error);
  CHECK_THROWS_AS(verify_alpha_minorant(-2.0, 20.0 * pi, 100000), Error);
}

TEST_CASE("check_minorant on classical inequalities") {
  const std::vector<double> xs = uniform_grid(4.0 * pi, 512);

  SUBCASE("x >= sin x") {
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = xs[i];
    CHECK(check_minorant(xs, fs, 1.0, 0.0));
  }

  SUBCASE("0 >= cos x fails at x = 0") {
    const std::vector<double> fs(xs.size(), 0.0);
    CHECK_FALSE(check_minorant(xs, fs, 0.0, 1.0));
  }

  SUBCASE("restating the power-family inequality") {
    const double alpha = 0.5;
    const double pi_alpha = std::pow(pi, alpha);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      fs[i] = std::pow(xs[i], alpha) - 0.5 * pi_alpha;
    CHECK(check_minorant(xs, fs, -alpha * pi_alpha / pi, -0.5 * pi_alpha));
  }

  SUBCASE("spacing above pi/100 is rejected") {
    const std::vector<double> coarse = uniform_grid(4.0 * pi, 100);
    const std::vector<double> fs(coarse.size(), 1.0);
    CHECK_THROWS_AS(check_minorant(coarse, fs, 0.0, 0.0), Error);
  }
}

TEST_CASE("minorant expectation at the touch points") {
  const SpectralState intelligent = make_intelligent_state(0.0, 1.0, 0.0, 0.0);
  const double t1 = pi;  // pi hbar / (E1 - E0)
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double pi_alpha = std::pow(pi, alpha);
    const double v = minorant_expectation(
        intelligent, t1, MinorantFunction::alpha_family(alpha),
        -alpha * pi_alpha / pi, -0.5 * pi_alpha);
    CHECK(std::abs(v) <= 1e-9);  // both levels sit on the analytic zeros
  }
}

TEST_CASE("minorant expectation shrinks with t") {
  const SpectralState s = make_doublet_state(100, 1.0, 1.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double pi_alpha = std::pow(pi, alpha);
    const double v = minorant_expectation(s, 1e-12,
                                          MinorantFunction::alpha_family(alpha),
                                          -alpha * pi_alpha / pi, -0.5 * pi_alpha);
    CHECK(v >= -kMinorantTolerance);
    CHECK(v <= 1e-5);
  }
}

TEST_CASE("minorant expectation is strictly positive off the zeros") {
  const SpectralState doublet = make_doublet_state(10000, 1.0, 1.0);
  const double alpha = 0.5;
  const double pi_alpha = std::pow(pi, alpha);
  const double v = minorant_expectation(doublet, pi,
                                        MinorantFunction::alpha_family(alpha),
                                        -alpha * pi_alpha / pi, -0.5 * pi_alpha);
  CHECK(v > 0.1);  // the high pair maps far off the residual zeros
}

TEST_CASE("expectation refuses unverified minorants") {
  const SpectralState s = make_intelligent_state(0.0, 1.0, 0.0, 0.0);
  // claim 0 >= cos x, which fails at x = 0
  std::vector<double> xs = uniform_grid(2.0 * pi, 400);
  std::vector<double> fs(xs.size(), 0.0);
  CHECK_THROWS_AS(minorant_expectation(s, pi,
                                       MinorantFunction::tabulated(xs, fs), 0.0, 1.0),
                  Error);
}

TEST_CASE("tabulated functions interpolate linearly") {
  const MinorantFunction f =
      MinorantFunction::tabulated({0.0, 1.0, 2.0}, {0.0, 2.0, 6.0});
  CHECK(f(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f(1.5) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(f(3.0), Error);
}

TEST_CASE("verified minorants keep expectations above the floor") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> energy(0, 20);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> time(0.01, 8.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<Level> levels;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      const std::complex<double> a(gauss(rng), gauss(rng));
      levels.push_back({static_cast<double>(energy(rng)) + 0.25 * k, a});
      total += std::norm(a);
    }
    for (Level& l : levels) l.amplitude /= std::sqrt(total);
    const SpectralState s(std::move(levels));
    for (double alpha : {0.5, 1.0, 3.0}) {
      const double pi_alpha = std::pow(pi, alpha);
      const double v = minorant_expectation(s, time(rng),
                                            MinorantFunction::alpha_family(alpha),
                                            -alpha * pi_alpha / pi, -0.5 * pi_alpha);
      CHECK(v >= -kMinorantTolerance);
    }
  }
}
