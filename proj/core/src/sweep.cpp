#include "onecount/sweep.hpp"

#include "onecount/errors.hpp"
#include "onecount/jump_models.hpp"

#include <algorithm>
#include <cmath>

namespace onecount {

namespace {

void check_chi0(double chi0) {
  if (!(chi0 > 0.0 && chi0 < 1.0)) throw ValidationError("chi_0 must lie in the open interval (0, 1)");
}

std::vector<double> ae_row(double x, const AePredictions& p) {
  return {x, p.p0_a, p.p1_a, p.p0_e, p.p1_e};
}

}  // namespace

Figure parse_figure(std::string_view name) {
  if (name == "fig1") return Figure::Fig1;
  if (name == "fig2") return Figure::Fig2;
  if (name == "fig3") return Figure::Fig3;
  if (name == "fig4") return Figure::Fig4;
  throw ValidationError("unknown figure '" + std::string(name) + "' (expected fig1..fig4)");
}

std::string figure_name(Figure figure) {
  static constexpr const char* names[] = {"fig1", "fig2", "fig3", "fig4"};
  return names[static_cast<int>(figure)];
}

Grid Grid::uniform(double lo, double hi, std::size_t count) {
  if (count == 0) throw ValidationError("grid needs at least one point");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("grid bounds must satisfy lo <= hi");
  Grid grid;
  grid.points.resize(count);
  if (count == 1) {
    grid.points[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid.points[i] = lo + step * static_cast<double>(i);
  grid.points.back() = hi;
  return grid;
}

Grid Grid::default_for(Figure figure, std::size_t count) {
  switch (figure) {
    case Figure::Fig1:
    case Figure::Fig2:
      return uniform(kGridMargin, 1.0 - kGridMargin, count);
    case Figure::Fig3:
      return uniform(kGridMargin, 0.25, count);
    case Figure::Fig4:
      return uniform(1.0, 10.0, count);
  }
  return {};
}

AePredictions coherent_predictions(double chi0) {
  check_chi0(chi0);
  // chi_n = chi_0 L^n / n!, L = -ln chi_0; the A model leaves chi_n unchanged.
  const double l = -std::log(chi0);
  return {chi0, chi0 * l, chi0 * l / (1.0 - chi0), chi0 * l * l / (2.0 * (1.0 - chi0))};
}

AePredictions thermal_predictions(double chi0) {
  check_chi0(chi0);
  // The E model leaves chi_n = chi_0 (1 - chi_0)^n unchanged.
  const double q = 1.0 - chi0;
  return {chi0 * chi0, 2.0 * chi0 * chi0 * q, chi0, chi0 * q};
}

std::pair<double, double> thermal_h_predictions(double chi0, double y) {
  check_chi0(chi0);
  if (!(y > 0.0) || !std::isfinite(y)) throw ValidationError("y must be positive");
  const double q = 1.0 - chi0;
  auto sin2 = [y](double k) {
    const double s = std::sin(y * std::sqrt(k));
    return s * s;
  };
  // sum_{k>=1} sin^2(y sqrt k) chi_0 q^k; the remainder after k is at most q^(k+1).
  double denominator = 0.0;
  double chi_k = chi0;
  for (std::size_t k = 1; k < 10'000'000; ++k) {
    chi_k *= q;
    denominator += sin2(static_cast<double>(k)) * chi_k;
    const double remainder = chi_k * q / chi0;
    if (remainder <= 1e-17 * denominator || remainder < 1e-300) break;
  }
  if (!(denominator > kJumpWeightThreshold)) throw ZeroJumpWeight(denominator);
  const double chi1 = chi0 * q;
  const double chi2 = chi1 * q;
  return {sin2(1.0) * chi1 / denominator, sin2(2.0) * chi2 / denominator};
}

SweepTable sweep_figure(Figure figure, const Grid& grid, double fig4_chi0) {
  if (grid.points.empty()) throw ValidationError("sweep grid is empty");
  SweepTable table;
  table.figure = figure;
  if (figure == Figure::Fig4) table.fig4_chi0 = fig4_chi0;

  switch (figure) {
    case Figure::Fig1:
    case Figure::Fig2: {
      table.header = {"x", "P0_A", "P1_A", "P0_E", "P1_E"};
      SweepSection section;
      for (double chi0 : grid.points) {
        section.rows.push_back(
            ae_row(chi0, figure == Figure::Fig1 ? coherent_predictions(chi0) : thermal_predictions(chi0)));
      }
      table.sections.push_back(std::move(section));
      break;
    }
    case Figure::Fig3: {
      table.header = {"x", "P0_A", "P1_A", "P0_E", "P1_E"};
      SweepSection upper{"upper", {}};
      SweepSection lower{"lower", {}};
      for (double chi1 : grid.points) {
        const auto [hi, lo] = chi0_branches(chi1);
        upper.rows.push_back(ae_row(chi1, thermal_predictions(hi)));
        lower.rows.push_back(ae_row(chi1, thermal_predictions(lo)));
      }
      table.sections.push_back(std::move(upper));
      table.sections.push_back(std::move(lower));
      break;
    }
    case Figure::Fig4: {
      check_chi0(fig4_chi0);
      table.header = {"y", "P0_H", "P1_H"};
      SweepSection section;
      for (double y : grid.points) {
        const auto [p0, p1] = thermal_h_predictions(fig4_chi0, y);
        section.rows.push_back({y, p0, p1});
      }
      table.sections.push_back(std::move(section));
      break;
    }
  }
  return table;
}

std::vector<double> sampled_zeros(const std::vector<double>& xs, const std::vector<double>& values,
                                  double rel_threshold) {
  std::vector<double> zeros;
  if (values.size() != xs.size() || values.size() < 3) return zeros;
  const double peak = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] < values[i - 1] && values[i] <= values[i + 1] && values[i] <= rel_threshold * peak) {
      zeros.push_back(xs[i]);
    }
  }
  return zeros;
}

}  // namespace onecount
