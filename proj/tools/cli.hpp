// cli.hpp: the `onecount` command-line front end.
//
// Exit codes:
//   0  success
//   2  validation error (bad options, malformed config or input files)
//   3  computation error (zero jump weight, no accepted trials)
//   4  I/O error

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace onecount::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 2,
  kComputationFailure = 3,
  kIoFailure = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onecount::cli
