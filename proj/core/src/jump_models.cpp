#include "onecount/jump_models.hpp"

#include "onecount/errors.hpp"
#include "onecount/state_spec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace onecount {

namespace {

void check_weight(double weight) {
  if (!(weight > kJumpWeightThreshold)) throw ZeroJumpWeight(weight);
}

double sin_squared(double y, double n) {
  const double s = std::sin(y * std::sqrt(n));
  return s * s;
}

bool has_bounded_weights(const JumpModel& model) {
  switch (model.kind()) {
    case JumpModel::Kind::E:
    case JumpModel::Kind::H:
      return true;
    case JumpModel::Kind::Beta:
      return model.parameter() >= 0.5;
    default:
      return false;
  }
}

// Excluded mass of the post-jump state. Exact bound for weights <= 1; for the
// unbounded models the weight at the first excluded level stands in for the
// supremum, so it is an estimate there.
double jump_tail_bound(const JumpModel& model, const DensityMatrix& rho, double norm) {
  if (rho.tail_mass_bound() == 0.0) return 0.0;
  const double scale = has_bounded_weights(model) ? 1.0 : model.weight_squared(rho.dim());
  return std::min(1.0, rho.tail_mass_bound() * scale / norm);
}

}  // namespace

JumpModel JumpModel::h(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw ValidationError("H-model requires y > 0");
  return JumpModel(Kind::H, y);
}

JumpModel JumpModel::beta(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("Beta-model requires beta >= 0");
  return JumpModel(Kind::Beta, b);
}

JumpModel JumpModel::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string name;
  std::string_view arg;
  const auto open = text.find('(');
  if (open != std::string_view::npos) {
    if (text.back() != ')') throw ParseError(0, "unbalanced parenthesis in model '" + std::string(text) + "'");
    name = std::string(text.substr(0, open));
    arg = text.substr(open + 1, text.size() - open - 2);
  } else {
    name = std::string(text);
  }
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  const bool has_arg = open != std::string_view::npos;
  auto no_arg = [&](JumpModel m) {
    if (has_arg) throw ParseError(0, "model '" + name + "' takes no parameter");
    return m;
  };
  if (name == "A") return no_arg(a());
  if (name == "E") return no_arg(e());
  if (name == "N") return no_arg(n());
  if (name == "H" || name == "BETA") {
    if (!has_arg) throw ParseError(0, "model '" + name + "' needs a parameter, e.g. H(2)");
    const double value = parse_number(arg);
    return name == "H" ? h(value) : beta(value);
  }
  throw ParseError(0, "unknown jump model '" + std::string(text) + "'");
}

double JumpModel::weight_squared(std::size_t n) const {
  const auto k = static_cast<double>(n);
  if (n == 0) return 0.0;
  switch (kind_) {
    case Kind::A:
      return k;
    case Kind::E:
      return 1.0;
    case Kind::H:
      return sin_squared(param_, k);
    case Kind::N:
      return k * k;
    case Kind::Beta:
      return std::pow(k, 1.0 - 2.0 * param_);
  }
  return 0.0;
}

std::string JumpModel::label() const {
  switch (kind_) {
    case Kind::A:
      return "A";
    case Kind::E:
      return "E";
    case Kind::H:
      return "H(" + format_number(param_) + ")";
    case Kind::N:
      return "N";
    case Kind::Beta:
      return "Beta(" + format_number(param_) + ")";
  }
  return "?";
}

LoweringOperator lowering_operator(const JumpModel& model, std::size_t d) {
  if (d < 2) throw ValidationError("lowering operator needs dimension >= 2");
  if (!model.is_lowering()) throw ValidationError("the n-model has no lowering operator");
  LoweringOperator op{std::vector<double>(d, 0.0), model.label()};
  for (std::size_t n = 1; n < d; ++n) {
    const auto k = static_cast<double>(n);
    switch (model.kind()) {
      case JumpModel::Kind::A:
        op.weights[n] = std::sqrt(k);
        break;
      case JumpModel::Kind::E:
        op.weights[n] = 1.0;
        break;
      case JumpModel::Kind::H:
        op.weights[n] = std::sin(model.parameter() * std::sqrt(k));
        break;
      case JumpModel::Kind::Beta:
        op.weights[n] = std::pow(k, 0.5 - model.parameter());
        break;
      case JumpModel::Kind::N:
        break;
    }
  }
  return op;
}

JumpOutcome apply_jump(const JumpModel& model, const DensityMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  const Matrix& in = rho.elements();
  Matrix out = Matrix::Zero(d, d);

  if (model.is_lowering()) {
    if (d < 2) throw ValidationError("jump needs dimension >= 2");
    const auto w = lowering_operator(model, rho.dim()).weights;
    // <m|O rho O^dag|n> = w(m+1) w(n+1) <m+1|rho|n+1>
    for (Eigen::Index m = 0; m + 1 < d; ++m) {
      for (Eigen::Index n = 0; n + 1 < d; ++n) {
        out(m, n) = (w[static_cast<std::size_t>(m + 1)] * w[static_cast<std::size_t>(n + 1)]) * in(m + 1, n + 1);
      }
    }
  } else {
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index n = 0; n < d; ++n) {
        out(m, n) = (static_cast<double>(m) * static_cast<double>(n)) * in(m, n);
      }
    }
  }

  const double norm = out.trace().real();
  check_weight(norm);
  out /= norm;
  return {DensityMatrix(std::move(out), jump_tail_bound(model, rho, norm)), norm};
}

double predict_pn(const JumpModel& model, const FockDistribution& chi, std::size_t n) {
  const auto next = static_cast<double>(n + 1);
  double numerator = 0.0;
  double denominator = 0.0;
  switch (model.kind()) {
    case JumpModel::Kind::A:
      numerator = next * chi[n + 1];
      denominator = chi.mean();
      break;
    case JumpModel::Kind::E:
      // total - chi_0 is 1 - chi_0 for a complete distribution
      numerator = chi[n + 1];
      denominator = chi.total() - chi[0];
      break;
    case JumpModel::Kind::H: {
      const double y = model.parameter();
      numerator = sin_squared(y, next) * chi[n + 1];
      for (std::size_t k = 1; k < chi.size(); ++k) {
        denominator += sin_squared(y, static_cast<double>(k)) * chi[k];
      }
      break;
    }
    case JumpModel::Kind::N: {
      const auto k = static_cast<double>(n);
      numerator = k * k * chi[n];
      denominator = chi.second_moment();
      break;
    }
    case JumpModel::Kind::Beta: {
      const double power = 1.0 - 2.0 * model.parameter();
      numerator = std::pow(next, power) * chi[n + 1];
      for (std::size_t k = 1; k < chi.size(); ++k) {
        denominator += std::pow(static_cast<double>(k), power) * chi[k];
      }
      break;
    }
  }
  check_weight(denominator);
  return numerator / denominator;
}

double mean_after_jump(const JumpModel& model, const PhotonStatistics& stats) {
  switch (model.kind()) {
    case JumpModel::Kind::A:
      // <n^2>/<n> - 1 = <n> + Q
      check_weight(stats.mean);
      return stats.second_moment / stats.mean - 1.0;
    case JumpModel::Kind::E: {
      double total = 0.0;
      for (double p : stats.chi) total += p;
      const double chi0 = stats.chi.empty() ? 0.0 : stats.chi.front();
      check_weight(total - chi0);
      return stats.mean / (total - chi0) - 1.0;
    }
    default:
      throw ValidationError("closed-form post-jump mean exists only for the A and E models");
  }
}

std::pair<double, double> chi0_branches(double chi1) {
  if (!(chi1 > 0.0) || chi1 > 0.25) {
    std::ostringstream os;
    os << "chi_1 = " << chi1 << " admits no thermal state (need 0 < chi_1 <= 1/4)";
    throw ValidationError(os.str());
  }
  const double s = std::sqrt(0.25 - chi1);
  return {0.5 + s, 0.5 - s};
}

}  // namespace onecount
