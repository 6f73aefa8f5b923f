#pragma once

#include <stdexcept>
#include <string>

namespace sshrabi {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula (out-of-zone k, z >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point where E_k = 0 and the Bogoliubov ratios are undefined.
class DegeneratePointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// n_c == n_v, so the sign-conditioned stability predicates are undefined.
class IndeterminatePopulationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed configuration or fixture text. Carries the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Quadrature did not reach its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double estimate = 0.0, double error_bound = 0.0)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Line search could not bracket a minimum.
class SearchFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The circulant-diagonalized dispersion is not real: the supplied chain
/// profiles do not describe a Hermitian coupling.
class ModelConsistencyError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Inversion history sampled below the Nyquist rate of its fastest beat.
class AliasingError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace sshrabi
