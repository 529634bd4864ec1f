#ifndef QSL_MIXED_STATES_HPP
#define QSL_MIXED_STATES_HPP

#include <complex>
#include <optional>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/error.hpp"

namespace qsl {

/// Negative eigenvalues above this clamp to 0; below it the matrix is
/// rejected as not positive semidefinite.
inline constexpr double kPsdTolerance = 1e-10;

/// Density matrix expressed in the eigenbasis of a diagonal Hamiltonian whose
/// spectrum is `energies`. Validated at construction: Hermitian within 1e-12,
/// unit trace within 1e-12, eigenvalues >= -kPsdTolerance, all energies at or
/// above the ground energy. Immutable.
class DensityMatrix {
 public:
  static constexpr std::size_t kMaxDim = 64;
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;

  DensityMatrix(std::vector<std::complex<double>> entries_row_major,
                std::vector<double> energies,
                std::optional<double> ground_energy = std::nullopt,
                double hbar = 1.0);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::complex<double>>& entries() const noexcept { return entries_; }
  std::complex<double> entry(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<double>& energies() const noexcept { return energies_; }
  double ground_energy() const noexcept { return ground_energy_; }
  double hbar() const noexcept { return hbar_; }

 private:
  std::vector<std::complex<double>> entries_;  // row-major dim x dim
  std::vector<double> energies_;
  double ground_energy_;
  double hbar_;
  std::size_t dim_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;                 // ascending
  std::vector<std::complex<double>> eigenvectors;  // row-major; column j = eigenvector j
};

/// Cyclic complex Jacobi rotations; converges when the off-diagonal Frobenius
/// mass drops below 1e-14 of the matrix norm. Input must be Hermitian within
/// 1e-10 (entrywise) or NotHermitian is thrown.
EigenDecomposition hermitian_eigendecomposition(
    const std::vector<std::complex<double>>& matrix, std::size_t dim);

/// V diag(sqrt(max(lambda, 0))) V^dagger. NotPSD below -kPsdTolerance.
std::vector<std::complex<double>> psd_sqrt(
    const std::vector<std::complex<double>>& matrix, std::size_t dim);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
/// Requires identical dimensions and spectra.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Conjugation by the diagonal unitary: entry (j,k) picks up the phase
/// e^{-i t (E_j - E_k) / hbar}. Trace, Hermiticity and eigenvalues are preserved.
DensityMatrix evolve(const DensityMatrix& rho, double t);

struct Purification {
  struct Component {
    double p;                                        // eigenvalue of rho
    std::vector<std::complex<double>> system_vector; // orthonormal eigenvector
  };
  std::vector<Component> components;  // descending p, eigenvalues < 1e-12 dropped
};

/// Spectral purification of rho. The ancilla basis is left implicit: every
/// quantity that mentions the purified state reduces to a trace over rho.
Purification purify(const DensityMatrix& rho);

/// <chi | chi(t)> for the spectral purification evolving under H (x) I, which
/// collapses to Tr(rho e^{-i t H / hbar}) = sum_j rho_jj e^{-i t E_j / hbar}.
std::complex<double> purified_survival_amplitude(const DensityMatrix& rho, double t);

/// sum_j rho_jj (E_j - E0)^alpha; the moments of the purification coincide
/// with these, so every moment-based bound transfers to mixed states.
double mixed_moment(const DensityMatrix& rho, double alpha);

struct UhlmannCheck {
  double fidelity;
  double overlap_sq;
  bool holds;  // fidelity >= overlap_sq - 1e-9
};

UhlmannCheck uhlmann_check(const DensityMatrix& rho, double t);

HorizonEstimate density_horizon(const DensityMatrix& rho);

/// First t where |Tr(rho e^{-i t H / hbar})| dips below tolerance, found with
/// the same scanner as the pure-state search.
OrthogonalizationResult purified_first_passage(
    const DensityMatrix& rho, double t_max, long grid_points,
    double tolerance = kOrthogonalityTolerance);

long recommended_density_grid_points(const DensityMatrix& rho, double t_max);

}  // namespace qsl

#endif
