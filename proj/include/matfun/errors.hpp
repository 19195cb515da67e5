#pragma once

#include <stdexcept>
#include <string>

namespace matfun {

// Base for everything thrown by the library. The CLI maps any Error to
// exit code 1 with a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A scalar function was evaluated inside its excluded set (branch cut, pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The lemma route divides by eigenvalues; a zero entry makes it undefined.
class ZeroEigenvalueError : public Error {
 public:
  using Error::Error;
};

// Work estimate of an enumeration exceeded the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An iterative scheme hit its cap before meeting tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// No circle satisfies both the enclosure margin and the excluded-set
// constraint.
class ContourError : public Error {
 public:
  using Error::Error;
};

// A shifted linear system was numerically singular.
class SolveError : public Error {
 public:
  using Error::Error;
};

// Divided-difference table exceeded the node cap.
class DepthError : public Error {
 public:
  using Error::Error;
};

// Matrix Taylor series requested outside its disk of convergence.
class RadiusError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. line/token are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int token = 0)
      : Error(what), line_(line), token_(token) {}
  int line() const { return line_; }
  int token() const { return token_; }

 private:
  int line_;
  int token_;
};

// Token count or matrix dimensions inconsistent with the declared size.
class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace matfun
