// errors.hpp: exception hierarchy shared by the library and the CLI.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace onecount {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: out-of-domain parameters, malformed records, invariant violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The requested tail tolerance cannot be met below the dimension cap.
class TruncationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed text input; carries the 1-based line number when known (0 otherwise).
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Tr(J rho) at or below the jump threshold.
class ZeroJumpWeight : public Error {
 public:
  explicit ZeroJumpWeight(double weight);
  double weight() const noexcept { return weight_; }

 private:
  double weight_;
};

class NoAcceptedTrials : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace onecount
