#include "onecount/fock.hpp"

#include "onecount/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace onecount {

namespace {

constexpr double kProbabilitySlack = 1e-12;

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

// Sum of term(n) for n >= from. ratio_bound(n) must bound term(k+1)/term(k)
// for every k >= n; once it drops below one the remainder is closed with the
// geometric bound, so the result is an upper estimate of the true tail.
template <class TermFn, class RatioFn>
double series_tail(TermFn term, RatioFn ratio_bound, std::size_t from) {
  double sum = 0.0;
  for (std::size_t n = from; n < from + 1'000'000; ++n) {
    const double t = term(n);
    sum += t;
    const double r = ratio_bound(n);
    if (r < 1.0) {
      const double rest = t * r / (1.0 - r);
      if (rest <= 1e-17 * sum || rest < 1e-300) return sum + rest;
    }
  }
  return sum;
}

// Smallest d in [2, kMaxDimension] with tail(d) <= eps. tail must be non-increasing.
template <class TailFn>
std::size_t smallest_dimension(TailFn tail, double eps, const char* what) {
  if (!(eps > 0.0) || !std::isfinite(eps)) fail("tail tolerance must be positive and finite");
  if (tail(kMaxDimension) > eps) {
    std::ostringstream os;
    os << what << ": tail tolerance " << eps << " cannot be met below the dimension cap "
       << kMaxDimension;
    throw TruncationError(os.str());
  }
  std::size_t lo = 2, hi = kMaxDimension;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::size_t checked_explicit_dimension(std::size_t d) {
  if (d < 2) fail("truncation dimension must be at least 2");
  if (d > kMaxDimension) {
    std::ostringstream os;
    os << "truncation dimension " << d << " exceeds the cap " << kMaxDimension;
    throw TruncationError(os.str());
  }
  return d;
}

template <class TailFn>
std::size_t resolve_dimension(const Truncation& trunc, TailFn tail, const char* what) {
  if (trunc.dim) return checked_explicit_dimension(*trunc.dim);
  return smallest_dimension(tail, trunc.tail_tolerance, what);
}

double thermal_tail(double mean_photons, std::size_t d) {
  return std::pow(mean_photons / (mean_photons + 1.0), static_cast<double>(d));
}

double poisson_tail(double mean_photons, std::size_t d) {
  if (mean_photons == 0.0) return 0.0;
  return series_tail([&](std::size_t n) { return poisson_chi(mean_photons, n); },
                     [&](std::size_t n) { return mean_photons / static_cast<double>(n + 1); }, d);
}

double squeezed_tail(double r, std::size_t d) {
  const double t2 = std::pow(std::tanh(r), 2);
  // Only even levels are populated; k indexes 2k >= d.
  return series_tail([&](std::size_t k) { return squeezed_vacuum_chi(r, 2 * k); },
                     [&](std::size_t) { return t2; }, (d + 1) / 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// FockDistribution

FockDistribution::FockDistribution(std::vector<double> probs, double tail_mass_bound)
    : probs_(std::move(probs)), tail_(tail_mass_bound) {
  if (!(tail_ >= 0.0) || !std::isfinite(tail_)) fail("tail_mass_bound must be finite and >= 0");
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack) {
      fail("occupation probabilities must lie in [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  const double sum = total();
  if (sum > 1.0 + kTraceTolerance) fail("occupation probabilities sum to more than one");
  if (sum < 1.0 - tail_ - kTraceTolerance) {
    fail("occupation probabilities are missing more mass than tail_mass_bound allows");
  }
}

double FockDistribution::total() const noexcept {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double FockDistribution::mean() const noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < probs_.size(); ++n) m += static_cast<double>(n) * probs_[n];
  return m;
}

double FockDistribution::second_moment() const noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < probs_.size(); ++n) {
    const auto k = static_cast<double>(n);
    m += k * k * probs_[n];
  }
  return m;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix elements, double tail_mass_bound)
    : elements_(std::move(elements)), tail_(tail_mass_bound) {
  if (elements_.rows() != elements_.cols() || elements_.rows() == 0) {
    fail("density matrix must be square and non-empty");
  }
  if (!(tail_ >= 0.0) || !std::isfinite(tail_)) fail("tail_mass_bound must be finite and >= 0");
  if (!elements_.allFinite()) fail("density matrix has non-finite entries");
  const Eigen::Index d = elements_.rows();
  for (Eigen::Index m = 0; m < d; ++m) {
    if (elements_(m, m).real() < -kProbabilitySlack) fail("density matrix has a negative population");
    for (Eigen::Index n = m; n < d; ++n) {
      if (std::abs(elements_(m, n) - std::conj(elements_(n, m))) > kHermiticityTolerance) {
        fail("density matrix is not Hermitian");
      }
    }
  }
  const double tr = trace();
  if (tr > 1.0 + kTraceTolerance || tr < 1.0 - tail_ - kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " inconsistent with tail_mass_bound " << tail_;
    fail(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Vector& amplitudes, double tail_mass_bound) {
  Matrix rho = amplitudes * amplitudes.adjoint();
  // Outer products are Hermitian up to rounding; make it exact.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho), tail_mass_bound);
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs, double tail_mass_bound) {
  const auto d = static_cast<Eigen::Index>(probs.size());
  Matrix rho = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) rho(n, n) = probs[static_cast<std::size_t>(n)];
  return DensityMatrix(std::move(rho), tail_mass_bound);
}

double DensityMatrix::trace() const noexcept { return elements_.trace().real(); }

FockDistribution DensityMatrix::populations() const {
  std::vector<double> chi(dim());
  for (std::size_t n = 0; n < chi.size(); ++n) chi[n] = (*this)(n, n).real();
  return FockDistribution(std::move(chi), tail_);
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd dense = elements_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigen decomposition failed");
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Analytic occupation probabilities

double thermal_chi(double mean_photons, std::size_t n) {
  // nbar^n / (nbar+1)^(n+1) = chi_0 (1 - chi_0)^n
  const double chi0 = 1.0 / (mean_photons + 1.0);
  return chi0 * std::pow(mean_photons * chi0, static_cast<double>(n));
}

double poisson_chi(double mean_photons, std::size_t n) {
  if (mean_photons == 0.0) return n == 0 ? 1.0 : 0.0;
  const auto k = static_cast<double>(n);
  return std::exp(-mean_photons + k * std::log(mean_photons) - std::lgamma(k + 1.0));
}

double squeezed_vacuum_chi(double r, std::size_t n) {
  if (n % 2 == 1) return 0.0;
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const auto k = static_cast<double>(n / 2);
  // (2k)! / (2^k k!)^2 * tanh^(2k) r / cosh r
  const double log_chi = std::lgamma(2.0 * k + 1.0) - 2.0 * k * std::log(2.0) -
                         2.0 * std::lgamma(k + 1.0) + 2.0 * k * std::log(std::tanh(r)) -
                         std::log(std::cosh(r));
  return std::exp(log_chi);
}

// ---------------------------------------------------------------------------
// State preparation

DensityMatrix prepare_thermal(double mean_photons, const Truncation& trunc) {
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons)) {
    fail("thermal mean photon number must be positive");
  }
  const std::size_t d =
      resolve_dimension(trunc, [&](std::size_t n) { return thermal_tail(mean_photons, n); }, "thermal");
  std::vector<double> chi(d);
  for (std::size_t n = 0; n < d; ++n) chi[n] = thermal_chi(mean_photons, n);
  return DensityMatrix::diagonal(chi, thermal_tail(mean_photons, d));
}

DensityMatrix prepare_coherent(Complex alpha, const Truncation& trunc) {
  const double mean_photons = std::norm(alpha);
  if (!std::isfinite(mean_photons) || mean_photons > 50.0) {
    fail("coherent amplitude must satisfy |alpha|^2 <= 50");
  }
  const std::size_t d = resolve_dimension(
      trunc, [&](std::size_t n) { return poisson_tail(mean_photons, n); }, "coherent");
  Vector amplitudes = Vector::Zero(static_cast<Eigen::Index>(d));
  const double phase = std::arg(alpha);
  for (std::size_t n = 0; n < d; ++n) {
    amplitudes(static_cast<Eigen::Index>(n)) =
        std::polar(std::sqrt(poisson_chi(mean_photons, n)), static_cast<double>(n) * phase);
  }
  return DensityMatrix::pure(amplitudes, poisson_tail(mean_photons, d));
}

DensityMatrix prepare_fock(std::size_t n, const Truncation& trunc) {
  const std::size_t d = trunc.dim ? checked_explicit_dimension(*trunc.dim) : std::max<std::size_t>(n + 1, 2);
  if (n >= d) {
    std::ostringstream os;
    os << "Fock level " << n << " does not fit in dimension " << d;
    fail(os.str());
  }
  std::vector<double> chi(d, 0.0);
  chi[n] = 1.0;
  return DensityMatrix::diagonal(chi, 0.0);
}

DensityMatrix prepare_squeezed_vacuum(double r, const Truncation& trunc) {
  if (!(r >= 0.0) || !std::isfinite(r) || std::pow(std::sinh(r), 2) > 25.0) {
    fail("squeezing parameter must satisfy r >= 0 and sinh^2 r <= 25");
  }
  const std::size_t d =
      resolve_dimension(trunc, [&](std::size_t n) { return squeezed_tail(r, n); }, "squeezed vacuum");
  Vector amplitudes = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n < d; n += 2) {
    const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    amplitudes(static_cast<Eigen::Index>(n)) = sign * std::sqrt(squeezed_vacuum_chi(r, n));
  }
  return DensityMatrix::pure(amplitudes, squeezed_tail(r, d));
}

DensityMatrix prepare(const StatePrep& prep) {
  return std::visit(
      [&](const auto& kind) -> DensityMatrix {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ThermalState>) {
          return prepare_thermal(kind.mean_photons, prep.truncation);
        } else if constexpr (std::is_same_v<T, CoherentState>) {
          return prepare_coherent(kind.alpha, prep.truncation);
        } else if constexpr (std::is_same_v<T, FockState>) {
          return prepare_fock(kind.n, prep.truncation);
        } else {
          return prepare_squeezed_vacuum(kind.r, prep.truncation);
        }
      },
      prep.kind);
}

// ---------------------------------------------------------------------------
// Statistics

PhotonStatistics photon_statistics(const FockDistribution& chi) {
  PhotonStatistics stats;
  stats.chi = chi.probs();
  stats.mean = chi.mean();
  stats.second_moment = chi.second_moment();
  if (stats.mean > 0.0) {
    stats.mandel_q = (stats.second_moment - stats.mean * stats.mean) / stats.mean - 1.0;
  }
  return stats;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho) {
  return photon_statistics(rho.populations());
}

double absorption_rate(const DensityMatrix& rho, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail("absorption coefficient gamma must be positive");
  return gamma * photon_statistics(rho).mean;
}

}  // namespace onecount
