#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

/// Syntax error carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a construct outside the supported language is used.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Learner resource limits (quantifier count, constant bound) exhausted.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// External solver process failed (spawn, crash, malformed output).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace qice
