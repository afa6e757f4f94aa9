#include "onecount/experiment.hpp"

#include "onecount/errors.hpp"
#include "onecount/state_spec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace onecount {

namespace {

double rejection_constant(const JumpModel& model, std::size_t d) {
  const auto top = static_cast<double>(d - 1);
  switch (model.kind()) {
    case JumpModel::Kind::A:
      return top;
    case JumpModel::Kind::E:
    case JumpModel::Kind::H:
      return 1.0;
    case JumpModel::Kind::N:
      return top * top;
    case JumpModel::Kind::Beta: {
      double best = 0.0;
      for (std::size_t n = 1; n < d; ++n) best = std::max(best, model.weight_squared(n));
      return best;
    }
  }
  return 1.0;
}

// c ln p with the 0 ln 0 = 0 convention; -inf for counts in an impossible bin.
double count_log_prob(std::uint64_t count, double p) {
  if (count == 0) return 0.0;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(count) * std::log(p);
}

}  // namespace

// ---------------------------------------------------------------------------

FockSampler::FockSampler(const FockDistribution& chi) : cdf_(chi.size()) {
  if (chi.size() == 0) throw ValidationError("cannot sample an empty distribution");
  double running = 0.0;
  for (std::size_t n = 0; n < chi.size(); ++n) {
    running += chi[n];
    cdf_[n] = running;
  }
  if (!(running > 0.0)) throw ValidationError("distribution has no mass to sample");
  for (double& c : cdf_) c /= running;
  // Levels past the last populated one must stay unreachable.
  const auto trailing_zeros = static_cast<std::size_t>(
      std::find_if(chi.probs().rbegin(), chi.probs().rend(), [](double p) { return p > 0.0; }) -
      chi.probs().rbegin());
  for (std::size_t n = cdf_.size() - 1 - trailing_zeros; n < cdf_.size(); ++n) cdf_[n] = 1.0;
}

std::size_t FockSampler::sample(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

std::size_t sample_initial(const FockSampler& sampler, TrialStream& stream) {
  return sampler.sample(stream.uniform());
}

AcceptanceRule::AcceptanceRule(const JumpModel& model, std::size_t d)
    : model_(model), dim_(d), normalizer_(d >= 2 ? rejection_constant(model, d) : 0.0) {
  if (d < 2) throw ValidationError("acceptance rule needs dimension >= 2");
}

double AcceptanceRule::probability(std::size_t n) const {
  if (n >= dim_) throw std::out_of_range("photon number outside the truncated space");
  return std::min(1.0, model_.weight_squared(n) / normalizer_);
}

TrialRecord absorption_trial(const AcceptanceRule& rule, std::size_t n, TrialStream& stream) {
  TrialRecord record{n, false, std::nullopt};
  const double p = rule.probability(n);
  if (p > 0.0 && stream.uniform() < p) {
    record.absorbed = true;
    record.n_final = rule.model().is_lowering() ? n - 1 : n;
  }
  return record;
}

Estimate binomial_estimate(std::uint64_t successes, std::uint64_t total) {
  if (total == 0) return {};
  const double p = static_cast<double>(successes) / static_cast<double>(total);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total))};
}

std::uint64_t EstimateReport::initial_at_least_two() const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t i = 2; i < initial_counts.size(); ++i) sum += initial_counts[i];
  return sum;
}

std::uint64_t EstimateReport::final_at_least_two() const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t i = 2; i < final_counts.size(); ++i) sum += final_counts[i];
  return sum;
}

EstimateReport run_experiment(const ExperimentConfig& config) {
  if (config.n_trials == 0) throw ValidationError("n_trials must be at least 1");
  if (config.accepted_target && *config.accepted_target == 0) {
    throw ValidationError("accepted_target must be at least 1");
  }
  const DensityMatrix rho = prepare(config.prep);
  const FockSampler sampler(rho.populations());
  const AcceptanceRule rule(config.model, rho.dim());

  EstimateReport report;
  report.state = describe(config.prep.kind);
  report.model = config.model.label();
  report.seed = config.seed;
  report.dim = rho.dim();
  report.classifier = config.classifier;
  report.rejection_constant = rule.normalizer();
  const std::size_t bins = config.classifier == QndClassifier::Exact ? rho.dim() : 3;
  report.initial_counts.assign(bins, 0);
  report.final_counts.assign(bins, 0);
  auto bin = [bins](std::size_t n) { return std::min(n, bins - 1); };

  for (std::uint64_t trial = 0; trial < config.n_trials; ++trial) {
    TrialStream stream(config.seed, trial);
    const std::size_t n = sample_initial(sampler, stream);
    const TrialRecord record = absorption_trial(rule, n, stream);
    ++report.trials;
    ++report.initial_counts[bin(record.n_initial)];
    if (record.absorbed) {
      ++report.accepted;
      ++report.final_counts[bin(*record.n_final)];
      if (config.accepted_target && report.accepted == *config.accepted_target) break;
    }
  }
  if (report.accepted == 0) {
    std::ostringstream os;
    os << "no trial out of " << report.trials << " was accepted";
    throw NoAcceptedTrials(os.str());
  }

  report.acceptance_rate = static_cast<double>(report.accepted) / static_cast<double>(report.trials);
  report.chi0 = binomial_estimate(report.initial_counts[0], report.trials);
  report.chi1 = binomial_estimate(report.initial_counts[1], report.trials);
  report.p0 = binomial_estimate(report.final_counts[0], report.accepted);
  report.p1 = binomial_estimate(report.final_counts[1], report.accepted);
  return report;
}

DiscriminationResult discriminate(const EstimateReport& report, const FockDistribution& chi,
                                  const std::vector<JumpModel>& candidates) {
  if (candidates.empty()) throw ValidationError("discrimination needs at least one candidate model");
  if (report.accepted == 0 || report.final_counts.size() < 2) {
    throw NoAcceptedTrials("report has no accepted trials to discriminate");
  }
  DiscriminationResult result;
  result.count0 = report.final_counts[0];
  result.count1 = report.final_counts[1];
  result.count_other = report.accepted - result.count0 - result.count1;

  // Multinomial coefficient, shared by every candidate.
  const double log_coefficient = std::lgamma(static_cast<double>(report.accepted) + 1.0) -
                                 std::lgamma(static_cast<double>(result.count0) + 1.0) -
                                 std::lgamma(static_cast<double>(result.count1) + 1.0) -
                                 std::lgamma(static_cast<double>(result.count_other) + 1.0);

  for (const JumpModel& model : candidates) {
    CandidateScore score{model};
    score.p0 = predict_pn(model, chi, 0);
    score.p1 = predict_pn(model, chi, 1);
    score.p_other = std::max(0.0, 1.0 - score.p0 - score.p1);
    score.log_likelihood = log_coefficient + count_log_prob(result.count0, score.p0) +
                           count_log_prob(result.count1, score.p1) +
                           count_log_prob(result.count_other, score.p_other);
    score.degenerate = std::isinf(score.log_likelihood);
    result.ranking.push_back(score);
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [](const CandidateScore& a, const CandidateScore& b) {
                     return a.log_likelihood > b.log_likelihood;
                   });
  const double best = result.ranking.front().log_likelihood;
  for (auto& score : result.ranking) {
    score.log_likelihood_ratio = std::isinf(score.log_likelihood)
                                     ? std::numeric_limits<double>::infinity()
                                     : best - score.log_likelihood;
  }
  result.low_confidence = report.accepted < kMinConfidentSamples ||
                          result.ranking.front().degenerate ||
                          (result.ranking.size() > 1 &&
                           result.ranking[1].log_likelihood_ratio < kMinConfidentLogRatio);
  return result;
}

}  // namespace onecount
