// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msmp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based, 0 when unknown; `column` is a
/// 1-based character offset for the formula text format.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A problem precondition does not hold (e.g. an MUS was requested for a
/// satisfiable formula), or the predicate does not hold on the full
/// reference set.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

/// The SAT oracle failed to produce an answer (crash, garbage output).
/// Distinct from an UNSAT answer.
class OracleError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration would exceed the configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments passed to a library entry point.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace msmp
