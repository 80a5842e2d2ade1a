#pragma once

#include <stdexcept>
#include <string>

namespace lexlab {

// Every failure raised by the library derives from Error so callers can map
// families of failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A lexical matrix with an object column that has no links.
class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested beyond the configured size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. Carries the 1-based line number when known (0 otherwise).
class IngestionError : public Error {
 public:
  IngestionError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double error_estimate)
      : Error(what + " (achieved error estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

}  // namespace lexlab
