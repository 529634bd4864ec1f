#include "qsl/mixed_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kahan.hpp"

namespace qsl {

namespace {

using complexd = std::complex<double>;

double frobenius(const std::vector<complexd>& m) {
  double s = 0.0;
  for (const complexd& z : m) s += std::norm(z);
  return std::sqrt(s);
}

double off_diagonal_mass(const std::vector<complexd>& m, std::size_t dim) {
  double s = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (r != c) s += std::norm(m[r * dim + c]);
  return std::sqrt(s);
}

void require_hermitian(const std::vector<complexd>& m, std::size_t dim, double tol) {
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      if (std::abs(m[r * dim + c] - std::conj(m[c * dim + r])) > tol)
        throw Error(ErrorCode::NotHermitian,
                    "matrix is not Hermitian at entry (" + std::to_string(r) + ", " +
                        std::to_string(c) + ")");
}

std::vector<complexd> mat_mul(const std::vector<complexd>& a,
                              const std::vector<complexd>& b, std::size_t dim) {
  std::vector<complexd> out(dim * dim, complexd(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const complexd aik = a[i * dim + k];
      if (aik == complexd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
    }
  return out;
}

}  // namespace

EigenDecomposition hermitian_eigendecomposition(const std::vector<complexd>& matrix,
                                                std::size_t dim) {
  if (dim == 0 || matrix.size() != dim * dim)
    throw Error(ErrorCode::InvalidArgument, "matrix must be dim x dim, dim >= 1");
  require_hermitian(matrix, dim, 1e-10);

  // symmetrize so the iteration starts from an exactly Hermitian matrix
  std::vector<complexd> a(matrix);
  for (std::size_t r = 0; r < dim; ++r) {
    a[r * dim + r] = complexd(a[r * dim + r].real(), 0.0);
    for (std::size_t c = r + 1; c < dim; ++c) {
      const complexd mean = 0.5 * (a[r * dim + c] + std::conj(a[c * dim + r]));
      a[r * dim + c] = mean;
      a[c * dim + r] = std::conj(mean);
    }
  }

  std::vector<complexd> v(dim * dim, complexd(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = 1.0;

  const double total_norm = frobenius(a);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a, dim) <= 1e-14 * total_norm) break;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const complexd apq = a[p * dim + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const complexd phase = apq / r;  // e^{i phi}
        const double app = a[p * dim + p].real();
        const double aqq = a[q * dim + q].real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G = diag-phase * plane rotation: columns p, q mix as
        //   col_p <- c col_p - s e^{-i phi} col_q
        //   col_q <- s col_p + c e^{-i phi} col_q
        const complexd sp = s * std::conj(phase);
        const complexd cp = c * std::conj(phase);
        for (std::size_t i = 0; i < dim; ++i) {
          const complexd mp = a[i * dim + p];
          const complexd mq = a[i * dim + q];
          a[i * dim + p] = c * mp - sp * mq;
          a[i * dim + q] = s * mp + cp * mq;
        }
        // rows pick up the conjugate rotation
        const complexd sph = s * phase;
        const complexd cph = c * phase;
        for (std::size_t j = 0; j < dim; ++j) {
          const complexd rp = a[p * dim + j];
          const complexd rq = a[q * dim + j];
          a[p * dim + j] = c * rp - sph * rq;
          a[q * dim + j] = s * rp + cph * rq;
        }
        a[p * dim + q] = complexd(0.0, 0.0);
        a[q * dim + p] = complexd(0.0, 0.0);
        a[p * dim + p] = complexd(a[p * dim + p].real(), 0.0);
        a[q * dim + q] = complexd(a[q * dim + q].real(), 0.0);

        for (std::size_t i = 0; i < dim; ++i) {
          const complexd vp = v[i * dim + p];
          const complexd vq = v[i * dim + q];
          v[i * dim + p] = c * vp - sp * vq;
          v[i * dim + q] = s * vp + cp * vq;
        }
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a, dim](std::size_t x, std::size_t y) {
    return a[x * dim + x].real() < a[y * dim + y].real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(dim);
  out.eigenvectors.assign(dim * dim, complexd(0.0, 0.0));
  for (std::size_t j = 0; j < dim; ++j) {
    out.eigenvalues[j] = a[order[j] * dim + order[j]].real();
    for (std::size_t i = 0; i < dim; ++i)
      out.eigenvectors[i * dim + j] = v[i * dim + order[j]];
  }
  return out;
}

// Eigenvalues below the round-off floor of the decomposition carry no
// information, but their square roots would inject ~sqrt(1e-15) noise into
// every root and trace. Treat them as exact zeros.
static double noise_floor(const std::vector<double>& eigenvalues) {
  double largest = 0.0;
  for (double lam : eigenvalues) largest = std::max(largest, std::abs(lam));
  return std::max(1e-13 * largest, 1e-16);
}

std::vector<complexd> psd_sqrt(const std::vector<complexd>& matrix, std::size_t dim) {
  EigenDecomposition eig = hermitian_eigendecomposition(matrix, dim);
  const double floor = noise_floor(eig.eigenvalues);
  std::vector<double> roots(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (eig.eigenvalues[k] < -kPsdTolerance)
      throw Error(ErrorCode::NotPSD,
                  "matrix has eigenvalue " + std::to_string(eig.eigenvalues[k]) +
                      " below the PSD tolerance");
    roots[k] = eig.eigenvalues[k] < floor ? 0.0 : std::sqrt(eig.eigenvalues[k]);
  }
  std::vector<complexd> out(dim * dim, complexd(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      complexd s(0.0, 0.0);
      for (std::size_t k = 0; k < dim; ++k)
        s += eig.eigenvectors[i * dim + k] * roots[k] *
             std::conj(eig.eigenvectors[j * dim + k]);
      out[i * dim + j] = s;
    }
  return out;
}

DensityMatrix::DensityMatrix(std::vector<complexd> entries_row_major,
                             std::vector<double> energies,
                             std::optional<double> ground_energy, double hbar)
    : entries_(std::move(entries_row_major)),
      energies_(std::move(energies)),
      hbar_(hbar),
      dim_(energies_.size()) {
  if (dim_ == 0)
    throw Error(ErrorCode::InvalidArgument, "density matrix needs at least one level");
  if (dim_ > kMaxDim)
    throw Error(ErrorCode::InvalidArgument, "dimensions above 64 are not supported");
  if (entries_.size() != dim_ * dim_)
    throw Error(ErrorCode::InvalidArgument,
                "matrix must hold dim x dim row-major entries");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_))
    throw Error(ErrorCode::InvalidArgument, "hbar must be positive and finite");
  for (double e : energies_)
    if (!std::isfinite(e))
      throw Error(ErrorCode::InvalidArgument, "energies must be finite");
  for (const complexd& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");

  require_hermitian(entries_, dim_, kHermitianTolerance);

  double trace = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) trace += entries_[j * dim_ + j].real();
  if (std::abs(trace - 1.0) > kTraceTolerance)
    throw Error(ErrorCode::Constraint,
                "density matrix trace is " + std::to_string(trace) + ", expected 1");

  const EigenDecomposition eig = hermitian_eigendecomposition(entries_, dim_);
  if (eig.eigenvalues.front() < -kPsdTolerance)
    throw Error(ErrorCode::NotPSD,
                "density matrix has eigenvalue " +
                    std::to_string(eig.eigenvalues.front()));

  ground_energy_ = ground_energy.value_or(
      *std::min_element(energies_.begin(), energies_.end()));
  if (!std::isfinite(ground_energy_))
    throw Error(ErrorCode::InvalidArgument, "ground energy must be finite");
  for (double e : energies_)
    if (e < ground_energy_)
      throw Error(ErrorCode::Constraint, "energy lies below the ground energy");
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "density matrices have different dimensions");
  for (std::size_t j = 0; j < rho.dim(); ++j)
    if (rho.energies()[j] != sigma.energies()[j])
      throw Error(ErrorCode::DimensionMismatch,
                  "density matrices live on different spectra");

  const std::size_t dim = rho.dim();
  const auto root = psd_sqrt(rho.entries(), dim);
  const auto inner = mat_mul(mat_mul(root, sigma.entries(), dim), root, dim);
  const EigenDecomposition eig = hermitian_eigendecomposition(inner, dim);

  const double floor = noise_floor(eig.eigenvalues);
  double tr = 0.0;
  for (double lam : eig.eigenvalues)
    if (lam >= floor) tr += std::sqrt(lam);
  double f = tr * tr;
  f = std::clamp(f, 0.0, 1.0 + 1e-9);
  return std::min(f, 1.0);
}

DensityMatrix evolve(const DensityMatrix& rho, double t) {
  const std::size_t dim = rho.dim();
  std::vector<complexd> out(rho.entries());
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      const double theta = -t * (rho.energies()[j] - rho.energies()[k]) / rho.hbar();
      out[j * dim + k] *= std::polar(1.0, theta);
    }
  return DensityMatrix(std::move(out), rho.energies(), rho.ground_energy(),
                       rho.hbar());
}

Purification purify(const DensityMatrix& rho) {
  const std::size_t dim = rho.dim();
  const EigenDecomposition eig = hermitian_eigendecomposition(rho.entries(), dim);

  Purification out;
  for (std::size_t k = dim; k-- > 0;) {  // descending eigenvalues
    const double p = eig.eigenvalues[k];
    if (p < 1e-12) continue;
    Purification::Component comp;
    comp.p = p;
    comp.system_vector.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
      comp.system_vector[i] = eig.eigenvectors[i * dim + k];
    out.components.push_back(std::move(comp));
  }
  return out;
}

std::complex<double> purified_survival_amplitude(const DensityMatrix& rho, double t) {
  detail::Accumulator re, im;
  for (std::size_t j = 0; j < rho.dim(); ++j) {
    const double w = rho.entry(j, j).real();
    const double theta = rho.energies()[j] / rho.hbar() * t;
    re.add(w * std::cos(theta));
    im.add(-w * std::sin(theta));
  }
  return {re.total(), im.total()};
}

double mixed_moment(const DensityMatrix& rho, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  detail::Accumulator acc;
  for (std::size_t j = 0; j < rho.dim(); ++j)
    acc.add(rho.entry(j, j).real() *
            std::pow(rho.energies()[j] - rho.ground_energy(), alpha));
  return acc.total();
}

UhlmannCheck uhlmann_check(const DensityMatrix& rho, double t) {
  const DensityMatrix evolved = evolve(rho, t);
  const double f = fidelity(rho, evolved);
  const double overlap_sq = std::norm(purified_survival_amplitude(rho, t));
  return {f, overlap_sq, f >= overlap_sq - 1e-9};
}

HorizonEstimate density_horizon(const DensityMatrix& rho) {
  std::vector<double> weights(rho.dim());
  for (std::size_t j = 0; j < rho.dim(); ++j) weights[j] = rho.entry(j, j).real();
  return horizon_from_spectrum(rho.energies(), weights, rho.hbar());
}

long recommended_density_grid_points(const DensityMatrix& rho, double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorCode::InvalidHorizon, "t_max must be positive and finite");
  const auto [mn, mx] =
      std::minmax_element(rho.energies().begin(), rho.energies().end());
  const double span = *mx - *mn;
  if (span == 0.0) return 16;
  const double limit = std::numbers::pi * rho.hbar() / (4.0 * span);
  const double points = std::ceil(t_max / limit) + 1.0;
  if (points > 2e9)
    throw Error(ErrorCode::GridTooCoarse,
                "sampling rule needs more than 2e9 grid points over this horizon");
  return std::max(16L, static_cast<long>(points));
}

OrthogonalizationResult purified_first_passage(const DensityMatrix& rho,
                                               double t_max, long grid_points,
                                               double tolerance) {
  const auto [mn, mx] =
      std::minmax_element(rho.energies().begin(), rho.energies().end());
  const double span = *mx - *mn;
  if (span > 0.0) {
    const double limit = std::numbers::pi * rho.hbar() / (4.0 * span);
    if (grid_points >= 16 && t_max / static_cast<double>(grid_points) > limit)
      throw Error(ErrorCode::GridTooCoarse,
                  "grid spacing exceeds pi hbar / (4 (E_max - E_min))");
  }
  auto amp_sq = [&rho](double t) {
    return std::norm(purified_survival_amplitude(rho, t));
  };
  return locate_first_minimum(amp_sq, span / (2.0 * rho.hbar()), t_max, grid_points,
                              tolerance);
}

}  // namespace qsl
