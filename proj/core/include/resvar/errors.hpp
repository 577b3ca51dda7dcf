#pragma once

#include <stdexcept>
#include <string>

namespace resvar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution or model parameter violates its constraint.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A textual family/model specification could not be parsed.
class SpecParseError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain where the quantity is defined,
/// e.g. an age t with survival probability zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed or two independent routes disagreed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance, or the integrand
/// produced a non-finite value.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate,
                  double abscissa);

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }
  /// Offending abscissa for non-finite integrand values, NaN otherwise.
  double abscissa() const noexcept { return abscissa_; }

 private:
  double best_estimate_;
  double error_estimate_;
  double abscissa_;
};

/// An integral defining the requested quantity does not converge
/// (e.g. the mean residual life of a modified Pareto lifetime).
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A numerically wrapped density does not integrate to one.
class MassError : public ParameterError {
 public:
  MassError(const std::string& what, double mass);
  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

}  // namespace resvar
