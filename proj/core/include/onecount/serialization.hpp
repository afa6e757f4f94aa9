// serialization.hpp: structured-text (JSON) records and CSV tables.
//
// CSV conventions: '.' decimal separator, no thousands separators, 17
// significant digits so every double reads back bit-identically. Sweep CSVs
// carry '#'-prefixed metadata lines:
//
//   # figure: fig3
//   # section: upper          (fig3 only; repeated before each branch)
//   x,P0_A,P1_A,P0_E,P1_E     (y,P0_H,P1_H for fig4)
//   0.001,...

#pragma once

#include "onecount/experiment.hpp"
#include "onecount/fock.hpp"
#include "onecount/jump_models.hpp"
#include "onecount/sweep.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace onecount {

// {kind, parameters, dim, tail_mass_bound, chi: [...]}
std::string state_record_json(const StateKind& kind, const DensityMatrix& rho);

void write_chi_csv(std::ostream& out, const FockDistribution& chi);

// {model, norm, dim, tail_mass_bound, mean_before, mean_after, chi_before, chi_after}
std::string jump_record_json(const JumpModel& model, const DensityMatrix& before, const JumpOutcome& outcome);

void write_sweep_csv(std::ostream& out, const SweepTable& table);
SweepTable read_sweep_csv(std::istream& in);

// Sweep with model metadata, grid range and per-column extrema.
std::string sweep_report_json(const SweepTable& table);
// Human-readable min/max summary; fig4 also lists the sampled zeros.
std::string sweep_text_summary(const SweepTable& table);

std::string estimate_report_json(const EstimateReport& report);
EstimateReport parse_estimate_report_json(const std::string& text);

std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateReport& report);

std::string discrimination_json(const DiscriminationResult& result);

// %.17g
std::string format_csv_number(double value);

}  // namespace onecount
