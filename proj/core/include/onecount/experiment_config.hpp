// experiment_config.hpp: key = value experiment description.
//
//   # comment
//   state           = thermal(0.7)     required; thermal|coherent|fock|squeezed
//   model           = A                required; A | E | N | H(y) | Beta(b)
//   trials          = 1000000          required, >= 1
//   seed            = 42               optional unsigned 64-bit
//   classifier      = exact            optional; exact | three-way
//   tail_tolerance  = 1e-12            optional; excludes dim
//   dim             = 40               optional explicit truncation dimension
//   accepted_target = 10000            optional; stop after this many absorptions
//   candidates      = A, E, H(2)       optional; models ranked by discriminate
//
// Keys may appear once. Unknown keys and malformed values are ParseErrors
// carrying the line number.

#pragma once

#include "onecount/experiment.hpp"

#include <istream>
#include <optional>
#include <string_view>
#include <vector>

namespace onecount {

struct ExperimentFile {
  ExperimentConfig config;
  bool has_seed = false;
  std::vector<JumpModel> candidates;
};

ExperimentFile parse_experiment_config(std::istream& in);

// Comma-separated model list; commas inside parentheses do not split.
std::vector<JumpModel> parse_model_list(std::string_view text);

QndClassifier parse_classifier(std::string_view text);
const char* classifier_name(QndClassifier classifier);

}  // namespace onecount
