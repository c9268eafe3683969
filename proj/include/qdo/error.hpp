#pragma once

#include <stdexcept>
#include <string>

namespace qdo {

/// Base of every error raised by the library. Each category maps onto one of
/// the CLI exit codes (see tools/qdo.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hard validation failure: non-finite entries, nonpositive variances.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A Gaussian kernel could not be formed (det C <= 0, Sigma not positive definite).
class SingularKernelError : public Error {
 public:
  using Error::Error;
};

/// Uncertainty product Omega^2 <= 0; lengths are undefined.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// The stationary linear system is singular (typically: no damping).
class NoStationaryStateError : public Error {
 public:
  using Error::Error;
};

/// Couplings outside the simplified-model set were supplied to the simplified RHS.
class ModelViolationError : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression is undefined at the requested parameters (r == 1).
class UnsupportedParameterError : public Error {
 public:
  using Error::Error;
};

/// The integrator produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdo
