// sweep.hpp: tables of post-jump P_0, P_1 across the initial-state family,
// one per figure:
//
//   fig1  coherent state, A and E models, versus chi_0
//   fig2  thermal state,  A and E models, versus chi_0
//   fig3  thermal state,  A and E models, versus chi_1 (upper and lower branch)
//   fig4  thermal state at fixed chi_0, H model, versus y

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace onecount {

enum class Figure { Fig1, Fig2, Fig3, Fig4 };

Figure parse_figure(std::string_view name);
std::string figure_name(Figure figure);

inline constexpr std::size_t kDefaultGridPoints = 200;
// Keeps chi_0 -> 0 and chi_0 -> 1 (singular denominators) off the grid.
inline constexpr double kGridMargin = 1e-3;
inline constexpr double kDefaultFig4Chi0 = 0.6;

struct Grid {
  std::vector<double> points;

  static Grid uniform(double lo, double hi, std::size_t count);
  static Grid default_for(Figure figure, std::size_t count = kDefaultGridPoints);
};

struct SweepSection {
  std::string label;  // empty for single-section figures; "upper"/"lower" for fig3
  std::vector<std::vector<double>> rows;

  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct SweepTable {
  Figure figure = Figure::Fig1;
  std::vector<std::string> header;
  std::vector<SweepSection> sections;
  double fig4_chi0 = kDefaultFig4Chi0;

  friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

// Post-jump P_0, P_1 for the A and E models.
struct AePredictions {
  double p0_a, p1_a, p0_e, p1_e;
};

AePredictions coherent_predictions(double chi0);
AePredictions thermal_predictions(double chi0);

// {P_0^H, P_1^H} for a thermal state; the normalizing series is summed until
// its geometric remainder is negligible.
std::pair<double, double> thermal_h_predictions(double chi0, double y);

// Throws ValidationError on an empty grid or points outside the figure's domain.
SweepTable sweep_figure(Figure figure, const Grid& grid, double fig4_chi0 = kDefaultFig4Chi0);

// x positions of strict local minima of `values` that fall below
// rel_threshold * max(values): the sampled zeros of a non-negative curve.
std::vector<double> sampled_zeros(const std::vector<double>& xs, const std::vector<double>& values,
                                  double rel_threshold = 1e-3);

}  // namespace onecount
