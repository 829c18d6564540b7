#pragma once

#include <stdexcept>
#include <string>

namespace conefourier {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the requested function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma, Beta or a hypergeometric denominator hit a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// |result| does not fit in a double; use the log-space companion.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A series or a quadrature failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate_re = 0.0,
                   double best_estimate_im = 0.0, double achieved_error = 0.0)
      : Error(what),
        best_re(best_estimate_re),
        best_im(best_estimate_im),
        achieved(achieved_error) {}

  double best_re;
  double best_im;
  double achieved;
};

}  // namespace conefourier
