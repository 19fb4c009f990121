#pragma once

#include <stdexcept>
#include <string>

namespace ducci {

// Base for every error raised by the library. The CLI maps all of these to
// exit code 2 (usage / hypothesis problems).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range argument (m < 2, entry >= m, empty tuple, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two tuples that must share a shape do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A configured step, node, or size cap was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// The operation is only defined under a theorem hypothesis that does not hold
// (for example the kernel predicate with n even).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Text input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Writing output failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ducci
