#include "cli.hpp"

#include "onecount/errors.hpp"
#include "onecount/experiment.hpp"
#include "onecount/experiment_config.hpp"
#include "onecount/fock.hpp"
#include "onecount/jc_oracle.hpp"
#include "onecount/jump_models.hpp"
#include "onecount/serialization.hpp"
#include "onecount/state_spec.hpp"
#include "onecount/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace onecount::cli {

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 2 validation error, 3 computation error "
    "(zero jump weight / no accepted trials), 4 I/O error.";

struct TruncationOptions {
  std::optional<std::size_t> dim;
  std::optional<double> tail_tolerance;

  void add_to(CLI::App* app) {
    auto* d = app->add_option("--dim", dim, "Explicit truncation dimension (2..512)");
    app->add_option("--tail-tol", tail_tolerance, "Tail tolerance for automatic dimension (default 1e-12)")
        ->excludes(d);
  }

  Truncation resolve() const {
    if (dim) return Truncation::dimension(*dim);
    if (tail_tolerance) {
      if (!(*tail_tolerance > 0.0)) throw ValidationError("--tail-tol must be positive");
      return Truncation::tolerance(*tail_tolerance);
    }
    return Truncation::tolerance();
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item));
  if (values.empty()) throw ValidationError("empty number list");
  return values;
}

// ---------------------------------------------------------------------------

struct PrepareOptions {
  std::string state;
  TruncationOptions trunc;
  std::string format = "json";
  std::string output;
};

void cmd_prepare(const PrepareOptions& o, std::ostream& out) {
  const StateKind kind = parse_state_kind(o.state);
  const DensityMatrix rho = prepare({kind, o.trunc.resolve()});
  if (o.format == "csv") {
    std::ostringstream os;
    write_chi_csv(os, rho.populations());
    emit(o.output, os.str(), out);
  } else {
    emit(o.output, state_record_json(kind, rho) + "\n", out);
  }
}

struct JumpOptions {
  std::string state;
  std::string model;
  TruncationOptions trunc;
  std::string output;
};

void cmd_jump(const JumpOptions& o, std::ostream& out) {
  const StateKind kind = parse_state_kind(o.state);
  const JumpModel model = JumpModel::parse(o.model);
  const DensityMatrix rho = prepare({kind, o.trunc.resolve()});
  emit(o.output, jump_record_json(model, rho, apply_jump(model, rho)) + "\n", out);
}

struct PredictOptions {
  std::string state;
  std::string model;
  std::size_t levels = 2;
  TruncationOptions trunc;
};

void cmd_predict(const PredictOptions& o, std::ostream& out) {
  const StateKind kind = parse_state_kind(o.state);
  const JumpModel model = JumpModel::parse(o.model);
  if (o.levels == 0) throw ValidationError("--levels must be at least 1");
  const DensityMatrix rho = prepare({kind, o.trunc.resolve()});
  const FockDistribution chi = rho.populations();
  const PhotonStatistics stats = photon_statistics(chi);

  out << "state " << describe(kind) << "  dim " << rho.dim() << "  tail " << rho.tail_mass_bound() << "\n";
  out << "model " << model.label() << "\n";
  out << "mean_before " << format_csv_number(stats.mean) << "\n";
  if (stats.mandel_q) out << "mandel_q " << format_csv_number(*stats.mandel_q) << "\n";
  if (model.kind() == JumpModel::Kind::A || model.kind() == JumpModel::Kind::E) {
    out << "mean_after " << format_csv_number(mean_after_jump(model, stats)) << "\n";
  }
  for (std::size_t n = 0; n < o.levels; ++n) {
    out << "P" << n << " " << format_csv_number(predict_pn(model, chi, n)) << "\n";
  }
}

struct FigureOptions {
  std::string which;
  std::string output;
  std::string json;
  std::size_t points = kDefaultGridPoints;
  std::optional<double> lo, hi;
  std::string at;
  double chi0 = kDefaultFig4Chi0;
  bool report = false;
};

void cmd_figure(const FigureOptions& o, std::ostream& out) {
  const Figure figure = parse_figure(o.which);
  Grid grid;
  if (!o.at.empty()) {
    grid.points = parse_number_list(o.at);
  } else {
    const Grid defaults = Grid::default_for(figure, 2);
    grid = Grid::uniform(o.lo.value_or(defaults.points.front()), o.hi.value_or(defaults.points.back()), o.points);
  }
  const SweepTable table = sweep_figure(figure, grid, o.chi0);
  std::ostringstream csv;
  write_sweep_csv(csv, table);
  emit(o.output, csv.str(), out);
  if (!o.json.empty()) write_file(o.json, sweep_report_json(table) + "\n");
  if (o.report) out << sweep_text_summary(table);
}

struct OracleOptions {
  std::vector<std::string> states;
  std::string ys;
  TruncationOptions trunc;
  std::string construction = "analytic";
};

void cmd_oracle(const OracleOptions& o, std::ostream& out) {
  const std::vector<double> ys = parse_number_list(o.ys);
  std::vector<StateKind> kinds;
  for (const auto& s : o.states) kinds.push_back(parse_state_kind(s));
  JCParams params;
  if (o.construction == "series") {
    params.construction = UnitaryConstruction::SeriesExponential;
    params.series_tolerance = 1e-14;
  } else if (o.construction != "analytic") {
    throw ValidationError("--construction must be 'analytic' or 'series'");
  }
  for (double y : ys) JumpModel::h(y);  // validates y > 0 up front
  const Truncation trunc = o.trunc.resolve();

  out << std::left << std::setw(22) << "state" << std::setw(10) << "y" << std::setw(6) << "dim"
      << std::setw(13) << "status" << std::setw(16) << "max_deviation" << std::setw(16) << "norm_deviation"
      << "norm\n";
  for (const auto& kind : kinds) {
    const DensityMatrix rho = prepare({kind, trunc});
    for (double y : ys) {
      params.y = y;
      out << std::left << std::setw(22) << describe(kind) << std::setw(10) << format_number(y) << std::setw(6)
          << rho.dim();
      std::optional<JumpOutcome> jc, model;
      try {
        jc = conditioned_field_state(params, rho);
      } catch (const ZeroJumpWeight&) {
      }
      try {
        model = apply_jump(JumpModel::h(y), rho);
      } catch (const ZeroJumpWeight&) {
      }
      if (!jc && !model) {
        out << std::setw(13) << "zero-weight" << std::setw(16) << "-" << std::setw(16) << "-" << "-\n";
        continue;
      }
      if (!jc || !model) {
        out << std::setw(13) << "MISMATCH" << std::setw(16) << "-" << std::setw(16) << "-" << "-\n";
        continue;
      }
      const double dev = (jc->state.elements() - model->state.elements()).cwiseAbs().maxCoeff();
      std::ostringstream d, n, w;
      d << std::scientific << std::setprecision(3) << dev;
      n << std::scientific << std::setprecision(3) << std::abs(jc->norm - model->norm);
      w << std::setprecision(10) << jc->norm;
      out << std::setw(13) << "ok" << std::setw(16) << d.str() << std::setw(16) << n.str() << w.str() << "\n";
    }
  }
}

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string csv;
  std::string discrimination;
};

void print_summary(const EstimateReport& r, std::ostream& out) {
  auto line = [&](const char* name, const Estimate& e) {
    out << "  " << name << " = " << std::setprecision(6) << e.value << " +/- " << e.std_error << "\n";
  };
  out << "state " << r.state << ", model " << r.model << ", seed " << r.seed << ", dim " << r.dim << "\n";
  out << "trials " << r.trials << ", accepted " << r.accepted << " (rate " << std::setprecision(6)
      << r.acceptance_rate << ")\n";
  line("chi0_hat", r.chi0);
  line("chi1_hat", r.chi1);
  line("p0_hat", r.p0);
  line("p1_hat", r.p1);
}

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  std::istringstream text(read_file(o.config));
  ExperimentFile file = parse_experiment_config(text);
  file.config.seed = *o.seed;
  const EstimateReport report = run_experiment(file.config);

  const std::string json = estimate_report_json(report) + "\n";
  if (!o.output.empty()) write_file(o.output, json);
  if (!o.csv.empty()) write_file(o.csv, estimate_csv_header() + "\n" + estimate_csv_row(report) + "\n");
  print_summary(report, out);

  if (!file.candidates.empty()) {
    const FockDistribution chi = prepare(file.config.prep).populations();
    const DiscriminationResult result = discriminate(report, chi, file.candidates);
    if (!o.discrimination.empty()) write_file(o.discrimination, discrimination_json(result) + "\n");
    out << "best_model " << result.best_model().label() << (result.low_confidence ? " (low confidence)" : "")
        << "\n";
    for (const auto& s : result.ranking) {
      out << "  " << std::setw(10) << s.model.label() << " log_likelihood " << std::setprecision(10)
          << s.log_likelihood << (s.degenerate ? " [degenerate]" : "") << "\n";
    }
  }
}

struct DiscriminateOptions {
  std::string report;
  std::string candidates;
  std::string state;
  std::string output;
};

void cmd_discriminate(const DiscriminateOptions& o, std::ostream& out) {
  const EstimateReport report = parse_estimate_report_json(read_file(o.report));
  const auto candidates = parse_model_list(o.candidates);
  // Predictions use the same truncation as the simulated run.
  const StateKind kind = parse_state_kind(o.state.empty() ? report.state : o.state);
  const FockDistribution chi = prepare({kind, Truncation::dimension(report.dim)}).populations();
  emit(o.output, discrimination_json(discriminate(report, chi, candidates)) + "\n", out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"onecount: one-count operator laboratory for a truncated single-mode field", "onecount"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  PrepareOptions prepare_opts;
  auto* prepare_cmd = app.add_subcommand("prepare", "Prepare a field state and print its record");
  prepare_cmd->add_option("--state", prepare_opts.state, "thermal(NBAR) | coherent(RE[,IM]) | fock(N) | squeezed(R)")
      ->required();
  prepare_opts.trunc.add_to(prepare_cmd);
  prepare_cmd->add_option("--format", prepare_opts.format, "json (record) or csv (n,chi_n)")
      ->check(CLI::IsMember({"json", "csv"}));
  prepare_cmd->add_option("-o,--output", prepare_opts.output, "Output file (default stdout)");

  JumpOptions jump_opts;
  auto* jump_cmd = app.add_subcommand("jump", "Apply one quantum jump and print the post-jump state");
  jump_cmd->add_option("--state", jump_opts.state, "Initial state")->required();
  jump_cmd->add_option("--model", jump_opts.model, "A | E | N | H(y) | Beta(b)")->required();
  jump_opts.trunc.add_to(jump_cmd);
  jump_cmd->add_option("-o,--output", jump_opts.output, "Output file (default stdout)");

  PredictOptions predict_opts;
  auto* predict_cmd = app.add_subcommand("predict", "Closed-form post-jump probabilities P_n");
  predict_cmd->add_option("--state", predict_opts.state, "Initial state")->required();
  predict_cmd->add_option("--model", predict_opts.model, "A | E | N | H(y) | Beta(b)")->required();
  predict_cmd->add_option("--levels", predict_opts.levels, "Number of P_n values to print (default 2)");
  predict_opts.trunc.add_to(predict_cmd);

  FigureOptions figure_opts;
  auto* figure_cmd = app.add_subcommand("figure", "Write a P_0/P_1 sweep table as CSV");
  figure_cmd->add_option("which", figure_opts.which, "fig1 | fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  figure_cmd->add_option("-o,--output", figure_opts.output, "CSV output file (default stdout)");
  figure_cmd->add_option("--json", figure_opts.json, "Also write a structured report with model metadata");
  auto* points = figure_cmd->add_option("--points", figure_opts.points, "Uniform grid size (default 200)");
  auto* lo = figure_cmd->add_option("--min", figure_opts.lo, "Grid start");
  auto* hi = figure_cmd->add_option("--max", figure_opts.hi, "Grid end");
  figure_cmd->add_option("--at", figure_opts.at, "Explicit comma-separated grid points")
      ->excludes(points)
      ->excludes(lo)
      ->excludes(hi);
  figure_cmd->add_option("--chi0", figure_opts.chi0, "Thermal chi_0 for fig4 (default 0.6)");
  figure_cmd->add_flag("--report", figure_opts.report, "Print min/max and zero-crossing summary");

  OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the H-model jump with Jaynes-Cummings evolution");
  oracle_cmd->add_option("--state", oracle_opts.states, "Initial state (repeatable)")->required();
  oracle_cmd->add_option("--y", oracle_opts.ys, "Comma-separated Rabi angles")->required();
  oracle_opts.trunc.add_to(oracle_cmd);
  oracle_cmd->add_option("--construction", oracle_opts.construction, "analytic | series");

  SimulateOptions simulate_opts;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run of the counting protocol");
  simulate_cmd->add_option("--config", simulate_opts.config, "Experiment config file")->required();
  simulate_cmd->add_option("--seed", simulate_opts.seed, "RNG seed (required; overrides the config)")->required();
  simulate_cmd->add_option("-o,--output", simulate_opts.output, "Write the estimate report (JSON)");
  simulate_cmd->add_option("--csv", simulate_opts.csv, "Write the estimate as a CSV row");
  simulate_cmd->add_option("--discrimination", simulate_opts.discrimination,
                           "Write the model ranking (JSON) when the config lists candidates");

  DiscriminateOptions disc_opts;
  auto* disc_cmd = app.add_subcommand("discriminate", "Rank candidate models against a saved estimate report");
  disc_cmd->add_option("--report", disc_opts.report, "Estimate report written by simulate")->required();
  disc_cmd->add_option("--candidates", disc_opts.candidates, "Comma-separated models, e.g. A,E,H(2)")->required();
  disc_cmd->add_option("--state", disc_opts.state, "Override the state recorded in the report");
  disc_cmd->add_option("-o,--output", disc_opts.output, "Output file (default stdout)");

  std::vector<const char*> argv{"onecount"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationFailure;
  }

  try {
    if (*prepare_cmd) cmd_prepare(prepare_opts, out);
    if (*jump_cmd) cmd_jump(jump_opts, out);
    if (*predict_cmd) cmd_predict(predict_opts, out);
    if (*figure_cmd) cmd_figure(figure_opts, out);
    if (*oracle_cmd) cmd_oracle(oracle_opts, out);
    if (*simulate_cmd) cmd_simulate(simulate_opts, out);
    if (*disc_cmd) cmd_discriminate(disc_opts, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const ZeroJumpWeight& e) {
    err << "error: " << e.what() << "\n";
    return kComputationFailure;
  } catch (const NoAcceptedTrials& e) {
    err << "error: " << e.what() << "\n";
    return kComputationFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }
  return kSuccess;
}

}  // namespace onecount::cli
