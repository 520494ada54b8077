#pragma once

#include <stdexcept>
#include <string>

namespace graphlim {

// Bad user input: malformed files, out-of-range arguments, violated
// preconditions. The CLI maps this to exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A computed object failed one of its own invariants. Exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A request that is well-formed but exceeds a configured resource limit
// (canonicalization size, exact search size, dense solve size).
class LimitExceeded : public InvalidInput {
 public:
  explicit LimitExceeded(const std::string& what) : InvalidInput(what) {}
};

}  // namespace graphlim
