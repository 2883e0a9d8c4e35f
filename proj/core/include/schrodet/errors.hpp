#pragma once

#include <stdexcept>
#include <string>

namespace schrodet {

/// Bad input: grammar violations, domain violations, unsatisfied preconditions.
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that should converge did not, or an intermediate left its
/// provable range. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error carrying a 1-based source position.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, int line, int column)
      : ValidationError("line " + std::to_string(line) + ", col " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace schrodet
