#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nozzle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative density, x < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// State at (or numerically indistinguishable from) vacuum where rho > 0 is required.
class VacuumError : public Error {
 public:
  using Error::Error;
};

/// Riemann state with w < z.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole: f(r) at r = +-1, or a sonic state in a boundary functional.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Should-not-happen failure of an internal numerical routine.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition of an operation, e.g. a nonnegative Riccati A coefficient.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Rejected configuration value. `line` is 0 when the value did not come from a file.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Stored trajectory too coarse (or too short) for the requested post-processing.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// P1 wall state that is not subsonic (lambda1 < 0 < lambda2 fails).
class SonicBoundaryError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced by the time integrator.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& message, std::size_t cell, double x, double t)
      : Error(message), cell_(cell), x_(x), t_(t) {}
  std::size_t cell() const { return cell_; }
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  std::size_t cell_;
  double x_;
  double t_;
};

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nozzle
