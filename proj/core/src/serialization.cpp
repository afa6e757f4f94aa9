#include "onecount/serialization.hpp"

#include "onecount/errors.hpp"
#include "onecount/experiment_config.hpp"
#include "onecount/state_spec.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace onecount {

namespace {

using nlohmann::ordered_json;

ordered_json state_parameters(const StateKind& kind) {
  return std::visit(
      [](const auto& k) -> ordered_json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ThermalState>) {
          return {{"mean_photons", k.mean_photons}};
        } else if constexpr (std::is_same_v<T, CoherentState>) {
          return {{"alpha_re", k.alpha.real()}, {"alpha_im", k.alpha.imag()}};
        } else if constexpr (std::is_same_v<T, FockState>) {
          return {{"n", k.n}};
        } else {
          return {{"r", k.r}};
        }
      },
      kind);
}

ordered_json estimate_json(const Estimate& e) { return {{"value", e.value}, {"std_error", e.std_error}}; }

Estimate estimate_from(const ordered_json& j) {
  return {j.at("value").get<double>(), j.at("std_error").get<double>()};
}

// Finite doubles as numbers, infinities as null.
ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string column_summary(const SweepTable& table, const SweepSection& section) {
  std::ostringstream os;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    auto [lo, hi] = std::minmax_element(section.rows.begin(), section.rows.end(),
                                        [c](const auto& a, const auto& b) { return a[c] < b[c]; });
    os << "  " << table.header[c] << ": min " << format_csv_number((*lo)[c]) << " at "
       << table.header[0] << " = " << format_csv_number((*lo)[0]) << ", max "
       << format_csv_number((*hi)[c]) << " at " << table.header[0] << " = "
       << format_csv_number((*hi)[0]) << "\n";
  }
  return os.str();
}

std::vector<double> column(const SweepSection& section, std::size_t c) {
  std::vector<double> values;
  values.reserve(section.rows.size());
  for (const auto& row : section.rows) values.push_back(row[c]);
  return values;
}

}  // namespace

std::string format_csv_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string state_record_json(const StateKind& kind, const DensityMatrix& rho) {
  ordered_json j;
  j["kind"] = kind_name(kind);
  j["parameters"] = state_parameters(kind);
  j["dim"] = rho.dim();
  j["tail_mass_bound"] = rho.tail_mass_bound();
  j["chi"] = rho.populations().probs();
  return j.dump(2);
}

void write_chi_csv(std::ostream& out, const FockDistribution& chi) {
  out << "n,chi_n\n";
  for (std::size_t n = 0; n < chi.size(); ++n) out << n << ',' << format_csv_number(chi[n]) << '\n';
}

std::string jump_record_json(const JumpModel& model, const DensityMatrix& before, const JumpOutcome& outcome) {
  const auto stats_before = photon_statistics(before);
  const auto stats_after = photon_statistics(outcome.state);
  ordered_json j;
  j["model"] = model.label();
  j["norm"] = outcome.norm;
  j["dim"] = outcome.state.dim();
  j["tail_mass_bound"] = outcome.state.tail_mass_bound();
  j["mean_before"] = stats_before.mean;
  j["mean_after"] = stats_after.mean;
  j["chi_before"] = stats_before.chi;
  j["chi_after"] = stats_after.chi;
  return j.dump(2);
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "# figure: " << figure_name(table.figure) << '\n';
  if (table.figure == Figure::Fig4) out << "# chi0: " << format_csv_number(table.fig4_chi0) << '\n';
  for (const auto& section : table.sections) {
    if (!section.label.empty()) out << "# section: " << section.label << '\n';
    for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
    out << '\n';
    for (const auto& row : section.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_csv_number(row[c]);
      out << '\n';
    }
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  SweepTable table;
  bool have_figure = false;
  bool expect_header = true;
  std::string pending_label;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# figure: ", 0) == 0) {
      table.figure = parse_figure(line.substr(10));
      have_figure = true;
      continue;
    }
    if (line.rfind("# chi0: ", 0) == 0) {
      table.fig4_chi0 = parse_number(line.substr(8));
      continue;
    }
    if (line.rfind("# section: ", 0) == 0) {
      pending_label = line.substr(11);
      expect_header = true;
      continue;
    }
    if (line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (expect_header) {
      if (table.header.empty()) {
        table.header = cells;
      } else if (cells != table.header) {
        throw ParseError(line_no, "section header differs from the first header");
      }
      table.sections.push_back({pending_label, {}});
      pending_label.clear();
      expect_header = false;
      continue;
    }
    if (cells.size() != table.header.size()) throw ParseError(line_no, "row has the wrong number of cells");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      try {
        row.push_back(parse_number(cell));
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
    }
    table.sections.back().rows.push_back(std::move(row));
  }
  if (!have_figure) throw ParseError(0, "missing '# figure:' line");
  if (table.sections.empty()) throw ParseError(0, "no table header found");
  return table;
}

std::string sweep_report_json(const SweepTable& table) {
  ordered_json j;
  j["figure"] = figure_name(table.figure);
  switch (table.figure) {
    case Figure::Fig1:
      j["initial_state"] = "coherent";
      j["independent_variable"] = "chi_0";
      j["models"] = {"A", "E"};
      break;
    case Figure::Fig2:
      j["initial_state"] = "thermal";
      j["independent_variable"] = "chi_0";
      j["models"] = {"A", "E"};
      break;
    case Figure::Fig3:
      j["initial_state"] = "thermal";
      j["independent_variable"] = "chi_1";
      j["models"] = {"A", "E"};
      j["branches"] = {{"upper", "chi_0 = 1/2 + sqrt(1/4 - chi_1), mean photon number < 1"},
                       {"lower", "chi_0 = 1/2 - sqrt(1/4 - chi_1), mean photon number > 1"}};
      break;
    case Figure::Fig4:
      j["initial_state"] = "thermal";
      j["independent_variable"] = "y";
      j["models"] = {"H(y)"};
      j["chi0"] = table.fig4_chi0;
      break;
  }
  j["columns"] = table.header;
  ordered_json sections = ordered_json::array();
  for (const auto& section : table.sections) {
    ordered_json s;
    s["label"] = section.label;
    s["rows"] = section.rows;
    ordered_json extrema = ordered_json::object();
    for (std::size_t c = 1; c < table.header.size() && !section.rows.empty(); ++c) {
      const auto values = column(section, c);
      auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      extrema[table.header[c]] = {{"min", *lo}, {"max", *hi}};
    }
    s["extrema"] = extrema;
    if (table.figure == Figure::Fig4) {
      const auto xs = column(section, 0);
      s["zeros"] = {{"P0_H", sampled_zeros(xs, column(section, 1))},
                    {"P1_H", sampled_zeros(xs, column(section, 2))}};
    }
    sections.push_back(s);
  }
  j["sections"] = sections;
  return j.dump(2);
}

std::string sweep_text_summary(const SweepTable& table) {
  std::ostringstream os;
  os << figure_name(table.figure) << ": " << table.sections.size() << " section(s)\n";
  for (const auto& section : table.sections) {
    if (section.rows.empty()) continue;
    os << (section.label.empty() ? std::string("all rows") : section.label + " branch") << " ("
       << section.rows.size() << " rows)\n";
    os << column_summary(table, section);
    if (table.figure == Figure::Fig4) {
      const auto xs = column(section, 0);
      for (std::size_t c = 1; c <= 2; ++c) {
        os << "  sampled zeros of " << table.header[c] << ":";
        for (double y : sampled_zeros(xs, column(section, c))) os << ' ' << format_csv_number(y);
        os << '\n';
      }
    }
  }
  return os.str();
}

std::string estimate_report_json(const EstimateReport& report) {
  ordered_json j;
  j["state"] = report.state;
  j["model"] = report.model;
  j["seed"] = report.seed;
  j["dim"] = report.dim;
  j["classifier"] = classifier_name(report.classifier);
  j["trials"] = report.trials;
  j["accepted"] = report.accepted;
  j["rejection_constant"] = report.rejection_constant;
  j["acceptance_rate"] = report.acceptance_rate;
  j["chi0"] = estimate_json(report.chi0);
  j["chi1"] = estimate_json(report.chi1);
  j["p0"] = estimate_json(report.p0);
  j["p1"] = estimate_json(report.p1);
  j["initial_counts"] = report.initial_counts;
  j["final_counts"] = report.final_counts;
  return j.dump(2);
}

EstimateReport parse_estimate_report_json(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    EstimateReport r;
    r.state = j.at("state").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.dim = j.at("dim").get<std::size_t>();
    r.classifier = parse_classifier(j.at("classifier").get<std::string>());
    r.trials = j.at("trials").get<std::uint64_t>();
    r.accepted = j.at("accepted").get<std::uint64_t>();
    r.rejection_constant = j.at("rejection_constant").get<double>();
    r.acceptance_rate = j.at("acceptance_rate").get<double>();
    r.chi0 = estimate_from(j.at("chi0"));
    r.chi1 = estimate_from(j.at("chi1"));
    r.p0 = estimate_from(j.at("p0"));
    r.p1 = estimate_from(j.at("p1"));
    r.initial_counts = j.at("initial_counts").get<std::vector<std::uint64_t>>();
    r.final_counts = j.at("final_counts").get<std::vector<std::uint64_t>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed estimate report: ") + e.what());
  }
}

std::string estimate_csv_header() {
  return "state,model,seed,dim,trials,accepted,acceptance_rate,chi0,chi0_se,chi1,chi1_se,p0,p0_se,p1,p1_se";
}

std::string estimate_csv_row(const EstimateReport& r) {
  std::ostringstream os;
  // state labels may contain commas, e.g. coherent(1,0.5)
  os << '"' << r.state << "\"," << '"' << r.model << "\"," << r.seed << ',' << r.dim << ',' << r.trials
     << ',' << r.accepted << ',' << format_csv_number(r.acceptance_rate);
  for (const Estimate* e : {&r.chi0, &r.chi1, &r.p0, &r.p1}) {
    os << ',' << format_csv_number(e->value) << ',' << format_csv_number(e->std_error);
  }
  return os.str();
}

std::string discrimination_json(const DiscriminationResult& result) {
  ordered_json j;
  j["counts"] = {{"n0", result.count0}, {"n1", result.count1}, {"other", result.count_other}};
  j["best_model"] = result.best_model().label();
  j["low_confidence"] = result.low_confidence;
  ordered_json ranking = ordered_json::array();
  for (const auto& s : result.ranking) {
    ranking.push_back({{"model", s.model.label()},
                       {"p0", s.p0},
                       {"p1", s.p1},
                       {"p_other", s.p_other},
                       {"log_likelihood", finite_or_null(s.log_likelihood)},
                       {"log_likelihood_ratio", finite_or_null(s.log_likelihood_ratio)},
                       {"degenerate", s.degenerate}});
  }
  j["ranking"] = ranking;
  return j.dump(2);
}

}  // namespace onecount
