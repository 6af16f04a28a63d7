#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hasse {

/// Operands live in different rings, orders or lengths disagree, or a
/// structural precondition of an operation is violated.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical condition required by an operation does not hold
/// (e.g. a derivation is not logarithmic, a system is infeasible).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The degree-bounded integral search ran out of room. This says nothing
/// about mathematical non-existence.
class BoundExhausted : public MathError {
 public:
  using MathError::MathError;
};

/// An unknown enters an identity other than through p^e-th powers.
class NonAdditiveError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, const std::string& source = "")
      : std::runtime_error(format(what, line, column, source)),
        message_(what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without location.
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column, const std::string& source) {
    return (source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hasse
