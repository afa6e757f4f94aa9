// fock.hpp: truncated single-mode Fock space. Density matrices, state
// preparation and photon-number statistics.
//
// Prepared states are NOT renormalized after truncation. The probability mass
// that falls outside the retained basis is tracked in tail_mass_bound, so
// analytic identities can be checked against a known error budget.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace onecount {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr std::size_t kMaxDimension = 512;
inline constexpr double kDefaultTailTolerance = 1e-12;

// Tolerances used when validating a density matrix on construction.
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;

// Photon-number distribution chi_n = <n|rho|n>, n = 0 .. size()-1.
class FockDistribution {
 public:
  FockDistribution() = default;
  explicit FockDistribution(std::vector<double> probs, double tail_mass_bound = 0.0);

  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double tail_mass_bound() const noexcept { return tail_; }

  // chi_n, zero beyond the retained range.
  double operator[](std::size_t n) const noexcept { return n < probs_.size() ? probs_[n] : 0.0; }

  double total() const noexcept;
  double mean() const noexcept;
  double second_moment() const noexcept;

 private:
  std::vector<double> probs_;
  double tail_ = 0.0;
};

class DensityMatrix {
 public:
  // Validates Hermiticity and trace; throws ValidationError.
  DensityMatrix(Matrix elements, double tail_mass_bound);

  static DensityMatrix pure(const Vector& amplitudes, double tail_mass_bound);
  static DensityMatrix diagonal(std::span<const double> probs, double tail_mass_bound);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.rows()); }
  const Matrix& elements() const noexcept { return elements_; }
  Complex operator()(std::size_t m, std::size_t n) const {
    return elements_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  }
  double tail_mass_bound() const noexcept { return tail_; }

  double trace() const noexcept;
  FockDistribution populations() const;

  // Smallest eigenvalue; an O(d^3) check meant for tests and diagnostics.
  double min_eigenvalue() const;

 private:
  Matrix elements_;
  double tail_;
};

// Either a fixed dimension or the smallest dimension whose excluded tail mass
// is at most `tail_tolerance` (capped at kMaxDimension).
struct Truncation {
  std::optional<std::size_t> dim;
  double tail_tolerance = kDefaultTailTolerance;

  static Truncation dimension(std::size_t d) { return {d, kDefaultTailTolerance}; }
  static Truncation tolerance(double eps = kDefaultTailTolerance) { return {std::nullopt, eps}; }
};

struct ThermalState {
  double mean_photons;
};
struct CoherentState {
  Complex alpha;
};
struct FockState {
  std::size_t n;
};
struct SqueezedVacuum {
  double r;
};
using StateKind = std::variant<ThermalState, CoherentState, FockState, SqueezedVacuum>;

struct StatePrep {
  StateKind kind;
  Truncation truncation = Truncation::tolerance();
};

DensityMatrix prepare_thermal(double mean_photons, const Truncation& trunc = Truncation::tolerance());
DensityMatrix prepare_coherent(Complex alpha, const Truncation& trunc = Truncation::tolerance());
DensityMatrix prepare_fock(std::size_t n, const Truncation& trunc = Truncation::tolerance());
DensityMatrix prepare_squeezed_vacuum(double r, const Truncation& trunc = Truncation::tolerance());
DensityMatrix prepare(const StatePrep& prep);

// Untruncated chi_n of the target state, evaluated in log space.
double thermal_chi(double mean_photons, std::size_t n);
double poisson_chi(double mean_photons, std::size_t n);
double squeezed_vacuum_chi(double r, std::size_t n);

struct PhotonStatistics {
  std::vector<double> chi;
  double mean = 0.0;
  double second_moment = 0.0;
  std::optional<double> mandel_q;  // absent when the mean is zero

  double variance() const noexcept { return second_moment - mean * mean; }
};

PhotonStatistics photon_statistics(const DensityMatrix& rho);
PhotonStatistics photon_statistics(const FockDistribution& chi);

// gamma * Tr(a rho a^dag) = gamma * <n>, in units of gamma (s^-1).
double absorption_rate(const DensityMatrix& rho, double gamma = 1.0);

}  // namespace onecount
