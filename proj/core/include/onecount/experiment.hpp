// experiment.hpp: Monte Carlo simulation of the two-step counting protocol:
//
//   1. QND readout of the initial photon number (estimates chi_0, chi_1);
//   2. one resonant atom, accepted with probability proportional to the true
//      model's jump weight at the sampled n;
//   3. QND readout after an accepted jump (estimates P_0, P_1).
//
// and a multinomial likelihood ranking of candidate models from the
// post-jump counts in the bins {0, 1, other}.

#pragma once

#include "onecount/fock.hpp"
#include "onecount/jump_models.hpp"
#include "onecount/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace onecount {

// Exact number readout, or the coarse {0, 1, >=2} readout of the protocol.
enum class QndClassifier { Exact, ThreeWay };

struct ExperimentConfig {
  StatePrep prep;
  JumpModel model = JumpModel::a();  // detector physics being simulated
  std::uint64_t n_trials = 1;
  std::uint64_t seed = 0;
  QndClassifier classifier = QndClassifier::Exact;
  // Stop early once this many trials have been accepted.
  std::optional<std::uint64_t> accepted_target;
};

struct TrialRecord {
  std::size_t n_initial = 0;
  bool absorbed = false;
  std::optional<std::size_t> n_final;  // present iff absorbed
};

// Inverse-CDF sampler over the retained populations; the truncation tail is
// renormalized away for sampling only.
class FockSampler {
 public:
  explicit FockSampler(const FockDistribution& chi);

  std::size_t dim() const noexcept { return cdf_.size(); }
  std::size_t sample(double u) const;  // u in [0, 1)

 private:
  std::vector<double> cdf_;
};

std::size_t sample_initial(const FockSampler& sampler, TrialStream& stream);

// Rejection step: accept level n with probability weight(n) / normalizer, where
// the normalizer is the largest weight the model can reach below dimension d
// (A: d-1, E: 1, H: 1, N: (d-1)^2, Beta: max_n n^(1-2 beta)).
class AcceptanceRule {
 public:
  AcceptanceRule(const JumpModel& model, std::size_t d);

  const JumpModel& model() const noexcept { return model_; }
  std::size_t dim() const noexcept { return dim_; }
  double normalizer() const noexcept { return normalizer_; }
  double probability(std::size_t n) const;

 private:
  JumpModel model_;
  std::size_t dim_;
  double normalizer_;
};

// One absorption attempt. Lowering models remove one photon; the n-model
// leaves n unchanged. Throws std::out_of_range for n >= rule.dim().
TrialRecord absorption_trial(const AcceptanceRule& rule, std::size_t n, TrialStream& stream);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / N)

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

Estimate binomial_estimate(std::uint64_t successes, std::uint64_t total);

struct EstimateReport {
  std::string state;
  std::string model;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  QndClassifier classifier = QndClassifier::Exact;
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  double rejection_constant = 1.0;
  double acceptance_rate = 0.0;
  Estimate chi0, chi1;  // over all trials
  Estimate p0, p1;      // over accepted trials
  // Readout histograms: one bin per level (Exact) or bins {0, 1, >=2} (ThreeWay).
  std::vector<std::uint64_t> initial_counts;
  std::vector<std::uint64_t> final_counts;

  std::uint64_t initial_at_least_two() const noexcept;
  std::uint64_t final_at_least_two() const noexcept;

  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

// Deterministic in config.seed. Throws NoAcceptedTrials when nothing was absorbed.
EstimateReport run_experiment(const ExperimentConfig& config);

struct CandidateScore {
  JumpModel model;
  double p0 = 0.0, p1 = 0.0, p_other = 0.0;
  double log_likelihood = 0.0;        // -inf when a zero-probability bin has counts
  double log_likelihood_ratio = 0.0;  // best log-likelihood minus this one
  bool degenerate = false;
};

inline constexpr std::uint64_t kMinConfidentSamples = 100;
inline constexpr double kMinConfidentLogRatio = 2.0;

struct DiscriminationResult {
  std::uint64_t count0 = 0, count1 = 0, count_other = 0;
  std::vector<CandidateScore> ranking;  // best first
  bool low_confidence = false;

  const JumpModel& best_model() const { return ranking.front().model; }
};

DiscriminationResult discriminate(const EstimateReport& report, const FockDistribution& chi,
                                  const std::vector<JumpModel>& candidates);

}  // namespace onecount
