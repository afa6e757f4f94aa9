// jump_models.hpp: one-count operators J rho = O rho O^dag and their
// closed-form post-jump photon statistics.
//
// All lowering models act as O|n> = w(n)|n-1>, O|0> = 0:
//
//   A          w(n) = sqrt(n)             (O = a)
//   E          w(n) = 1                   (O = (1+n)^(-1/2) a)
//   H(y)       w(n) = sin(y sqrt(n))      (resonant Jaynes-Cummings atom, y = g t)
//   Beta(b)    w(n) = n^(1/2 - b)         (O = (1+n)^(-b) a)
//
// The n-model J rho = n rho n keeps the photon number and has no lowering
// operator; apply_jump and predict_pn handle it directly.

#pragma once

#include "onecount/fock.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace onecount {

// Jumps with Tr(J rho) at or below this are refused.
inline constexpr double kJumpWeightThreshold = 1e-14;

class JumpModel {
 public:
  enum class Kind { A, E, H, N, Beta };

  static JumpModel a() { return JumpModel(Kind::A, 0.0); }
  static JumpModel e() { return JumpModel(Kind::E, 0.0); }
  static JumpModel h(double y);
  static JumpModel n() { return JumpModel(Kind::N, 0.0); }
  static JumpModel beta(double b);

  // "A", "E", "H(2.5)", "N", "Beta(0.25)"; case-insensitive.
  static JumpModel parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  // y for H, beta for Beta, zero otherwise.
  double parameter() const noexcept { return param_; }
  bool is_lowering() const noexcept { return kind_ != Kind::N; }

  // Per-level jump weight |<n-1|O|n>|^2 for lowering models, n^2 for N.
  double weight_squared(std::size_t n) const;

  std::string label() const;

  friend bool operator==(const JumpModel&, const JumpModel&) = default;

 private:
  JumpModel(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

struct LoweringOperator {
  std::vector<double> weights;  // weights[0] is unused (O|0> = 0)
  std::string label;
};

struct JumpOutcome {
  DensityMatrix state;
  double norm;  // Tr(J rho_i)
};

// Throws ValidationError for the n-model or d < 2.
LoweringOperator lowering_operator(const JumpModel& model, std::size_t d);

// rho_f = J rho_i / Tr(J rho_i). Throws ZeroJumpWeight at or below the threshold.
JumpOutcome apply_jump(const JumpModel& model, const DensityMatrix& rho);

// Closed-form P_n = <n|rho_f|n> from the initial populations alone.
double predict_pn(const JumpModel& model, const FockDistribution& chi, std::size_t n);

// Post-jump <n> from the initial moments; only A and E have closed forms.
double mean_after_jump(const JumpModel& model, const PhotonStatistics& stats);

// Both thermal solutions of chi_1 = chi_0 (1 - chi_0): {upper (nbar < 1), lower (nbar > 1)}.
std::pair<double, double> chi0_branches(double chi1);

// Thermal mean photon number for a given vacuum occupation.
inline double thermal_mean_from_chi0(double chi0) { return (1.0 - chi0) / chi0; }

}  // namespace onecount
