#include "onecount/experiment_config.hpp"

#include "onecount/errors.hpp"
#include "onecount/state_spec.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <string>

namespace onecount {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(0, "expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

// Re-throws with the line number attached.
template <class Fn>
auto at_line(std::size_t line, const std::string& key, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ParseError(line, "field '" + key + "': " + e.what());
  }
}

}  // namespace

std::vector<JumpModel> parse_model_list(std::string_view text) {
  std::vector<JumpModel> models;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      if (text[i] != ',' || depth != 0) continue;
    }
    const auto item = trim(text.substr(start, i - start));
    if (item.empty()) throw ParseError(0, "empty entry in model list");
    models.push_back(JumpModel::parse(item));
    start = i + 1;
  }
  return models;
}

QndClassifier parse_classifier(std::string_view text) {
  text = trim(text);
  if (text == "exact") return QndClassifier::Exact;
  if (text == "three-way" || text == "three_way") return QndClassifier::ThreeWay;
  throw ParseError(0, "classifier must be 'exact' or 'three-way'");
}

const char* classifier_name(QndClassifier classifier) {
  return classifier == QndClassifier::Exact ? "exact" : "three-way";
}

ExperimentFile parse_experiment_config(std::istream& in) {
  static const std::set<std::string> known = {"state", "model", "trials", "seed", "classifier",
                                              "tail_tolerance", "dim", "accepted_target", "candidates"};
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known.count(key)) throw ParseError(line_no, "unknown key '" + key + "'");
    if (value.empty()) throw ParseError(line_no, "key '" + key + "' has no value");
    if (!fields.emplace(key, std::make_pair(value, line_no)).second) {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
  }
  for (const char* required : {"state", "model", "trials"}) {
    if (!fields.count(required)) throw ParseError(0, std::string("missing required key '") + required + "'");
  }
  if (fields.count("dim") && fields.count("tail_tolerance")) {
    throw ParseError(fields.at("dim").second, "'dim' and 'tail_tolerance' are mutually exclusive");
  }

  ExperimentFile file;
  auto& cfg = file.config;
  auto field = [&](const std::string& key, auto&& parse) {
    const auto& [value, line] = fields.at(key);
    return at_line(line, key, [&] { return parse(value); });
  };

  cfg.prep.kind = field("state", [](const std::string& v) { return parse_state_kind(v); });
  cfg.model = field("model", [](const std::string& v) { return JumpModel::parse(v); });
  cfg.n_trials = field("trials", [](const std::string& v) { return parse_unsigned(v); });
  if (cfg.n_trials == 0) throw ParseError(fields.at("trials").second, "trials must be at least 1");
  if (fields.count("seed")) {
    cfg.seed = field("seed", [](const std::string& v) { return parse_unsigned(v); });
    file.has_seed = true;
  }
  if (fields.count("classifier")) {
    cfg.classifier = field("classifier", [](const std::string& v) { return parse_classifier(v); });
  }
  if (fields.count("dim")) {
    const auto d = field("dim", [](const std::string& v) { return parse_unsigned(v); });
    cfg.prep.truncation = Truncation::dimension(static_cast<std::size_t>(d));
  }
  if (fields.count("tail_tolerance")) {
    const double eps = field("tail_tolerance", [](const std::string& v) { return parse_number(v); });
    if (!(eps > 0.0)) throw ParseError(fields.at("tail_tolerance").second, "tail_tolerance must be positive");
    cfg.prep.truncation = Truncation::tolerance(eps);
  }
  if (fields.count("accepted_target")) {
    cfg.accepted_target = field("accepted_target", [](const std::string& v) { return parse_unsigned(v); });
    if (*cfg.accepted_target == 0) {
      throw ParseError(fields.at("accepted_target").second, "accepted_target must be at least 1");
    }
  }
  if (fields.count("candidates")) {
    file.candidates = field("candidates", [](const std::string& v) { return parse_model_list(v); });
  }
  return file;
}

}  // namespace onecount
