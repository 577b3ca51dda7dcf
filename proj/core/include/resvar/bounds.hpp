#pragma once

#include <limits>
#include <string>

#include "resvar/distributions.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

enum class BoundKind { LowerCP, UpperLogConcave, UpperWeighted };

std::string to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::LowerCP;
  double t = 0.0;
  /// NaN when the hypothesis fails and no bound is claimed.
  double bound_value = std::numeric_limits<double>::quiet_NaN();
  double measured_v = 0.0;
  bool hypothesis_ok = false;
  /// measured_v - bound (lower) or bound - measured_v (upper); NaN without a bound.
  double slack = std::numeric_limits<double>::quiet_NaN();
  /// Abscissa where the weighted-bound hypothesis failed, NaN otherwise.
  double witness = std::numeric_limits<double>::quiet_NaN();
  /// Lower bound: sigma^2 (E[w g'])^2 with g = -log f_t, the form of the
  /// underlying variance inequality. Equal to bound_value in exact arithmetic.
  double cross_check = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

/// sigma^2(t) (E[w_t'(X_t)])^2 with
/// sigma^2(t) w_t(x) f_t(x) = int_0^x (m(t) - z) f_t(z) dz.
/// w_t is tabulated from the upper tail and differentiated numerically.
/// Infinite m(t) or sigma^2(t) gives hypothesis_ok = false.
BoundReport cp_lower_bound(const Distribution& d, double t, const QuadConfig& cfg = {});

/// Bound 1 when d is declared log-concave; residual densities inherit the
/// property. Always reports the measured V(X_t).
BoundReport logconcave_upper_bound(const Distribution& d, double t, const QuadConfig& cfg = {});

/// alpha [Lambda delta + H^w] + beta [Lambda + H] - [Lambda + H]^2, valid when
/// e^{-alpha x - beta} <= f(x) <= 1 for all x >= 0. The hypothesis is probed
/// on 512 quantile-mapped points plus the support ends; passing is evidence,
/// not proof.
BoundReport weighted_upper_bound(const Distribution& d, double t, double alpha, double beta,
                                 const QuadConfig& cfg = {});

/// First x on the probe grid violating the weighted-bound hypothesis, or NaN.
double weighted_hypothesis_witness(const Distribution& d, double alpha, double beta);

}  // namespace resvar
