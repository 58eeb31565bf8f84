#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermatlab {

/// Arithmetic outside the domain of an operation (division by zero, field mismatch).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An input violates the stated precondition of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration exceeded its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computation routes disagree; always a bug or a broken theorem.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Too many non-finite integrand samples during quadrature.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The image of a map lies inside the divisor under study.
class ContainmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical root isolation could not separate the roots.
class RootIsolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input error with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column, std::string token)
      : std::runtime_error(format(message, line, column, token)),
        message_(std::move(message)),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column,
                            const std::string& token) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message + " (token '" +
           token + "')";
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

}  // namespace fermatlab
