#pragma once

#include <stdexcept>
#include <string>

namespace gorbit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range space / algebra specification (CLI exit code 1).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Space-spec text that failed to parse; carries a 1-based position.
class ParseError : public InvalidSpec {
 public:
  ParseError(const std::string& what, int line, int column)
      : InvalidSpec(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A constructed operator left its admissible set (e.g. not positive definite).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: unresolved eigenvalue clusters, broken invariants.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public NumericalFailure {
 public:
  DecompositionFailure(const std::string& what, double gap) : NumericalFailure(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// A known structural fact of a fixture could not be reproduced.
class PipelineAssertion : public NumericalFailure {
 public:
  PipelineAssertion(const std::string& fact, const std::string& detail)
      : NumericalFailure("pipeline assertion failed: " + fact + ": " + detail), fact_(fact) {}
  const std::string& fact() const noexcept { return fact_; }

 private:
  std::string fact_;
};

}  // namespace gorbit
