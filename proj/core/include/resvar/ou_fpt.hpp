#pragma once

#include <vector>

#include "resvar/distributions.hpp"
#include "resvar/measure_curve.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

/// First-passage time through zero of an Ornstein-Uhlenbeck process
/// started at y, with reversion rate alpha, variance parameter nu and
/// catastrophes (resets to zero) at rate xi.
struct OUFPTParams {
  double y = 1.0;
  double alpha = 1.0;
  double nu = 1.0;
  double xi = 0.0;

  /// Throws ParameterError unless y != 0, alpha > 0, nu > 0, xi >= 0.
  void validate() const;
};

/// FPT density without catastrophes; 0 for t <= 0 and while
/// 1 - exp(-2 alpha t) < 1e-8.
double ou_fpt_tilde_pdf(const OUFPTParams& p, double t);

/// FPT density with catastrophes; xi at t = 0, 0 for t < 0.
double ou_fpt_pdf(const OUFPTParams& p, double t);

/// Closed-form survival exp(-xi t) erf(|y| e^{-alpha t} / sqrt(nu (1 - e^{-2 alpha t}))).
double ou_fpt_survival(const OUFPTParams& p, double t);

/// For xi > 0, the first t where exp(-xi t) (tilde f(t) + xi) < 1e-16.
/// NaN when xi = 0.
double ou_fpt_effective_high(const OUFPTParams& p);

/// The density wrapped by from_pdf on [0, inf).
Distribution ou_fpt_distribution(const OUFPTParams& p);

/// Residual entropy and varentropy (columns H, V) over the ages.
MeasureCurve ou_fpt_residual_measures(const OUFPTParams& p, const std::vector<double>& ages,
                                      const QuadConfig& cfg = {}, int jobs = 1,
                                      bool with_errors = false);

}  // namespace resvar
