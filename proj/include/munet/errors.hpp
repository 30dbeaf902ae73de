#pragma once

#include <stdexcept>
#include <string>

namespace munet {

// Arithmetic on path counts left the representable range.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (.sdnet or .murep).
struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& what, int line_, int column_)
      : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// An operation was called on input violating its stated preconditions.
struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Brute-force helpers refuse inputs beyond their size guard.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace munet
