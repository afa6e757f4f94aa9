#include "onecount/errors.hpp"

#include <sstream>

namespace onecount {

namespace {

std::string with_line(std::size_t line, const std::string& what) {
  if (line == 0) return what;
  std::ostringstream os;
  os << "line " << line << ": " << what;
  return os.str();
}

std::string zero_weight_message(double weight) {
  std::ostringstream os;
  os << "jump weight Tr(J rho) = " << weight << " is below the zero-weight threshold";
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : ValidationError(with_line(line, what)), line_(line) {}

ZeroJumpWeight::ZeroJumpWeight(double weight)
    : Error(zero_weight_message(weight)), weight_(weight) {}

}  // namespace onecount
