#pragma once

#include <stdexcept>
#include <string>

namespace crnacr {

/// Input text could not be parsed. Carries a 1-based line/column position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// The requested analysis does not apply to the given system (e.g. a
/// rank-one method on a network of rank two). Distinct from a bad argument:
/// the input is well-formed, the hypotheses are not met.
class InapplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric routine failed to converge or lost a bracket.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crnacr
