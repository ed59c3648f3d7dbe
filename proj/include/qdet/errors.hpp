#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// The input violates a documented precondition (non-square, non-Hermitian,
/// route hypothesis not met, singular shifted matrix, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A determinant of order above the configured enumeration limit was requested.
class GuardExceeded : public Error {
 public:
  GuardExceeded(std::size_t order, std::size_t limit)
      : Error("determinant of order " + std::to_string(order) +
              " exceeds the enumeration guard (max order " + std::to_string(limit) +
              "); raise it with --max-n or QDET_MAX_N"),
        order_(order),
        limit_(limit) {}

  std::size_t order() const { return order_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t order_;
  std::size_t limit_;
};

/// Internal contradiction, e.g. a vanishing minor-sum denominator for a
/// nonzero matrix. Never masked.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace qdet
