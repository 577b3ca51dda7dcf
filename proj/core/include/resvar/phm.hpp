#pragma once

#include <string>
#include <vector>

#include "resvar/distributions.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

/// Proportional hazards model: survival S(t)^a over a baseline S.
struct PHModel {
  Distribution baseline;
  double a = 1.0;
};

/// Throws ParameterError unless a > 0 and finite.
PHModel make_phm(Distribution baseline, double a);

/// Survival S^a, pdf a S^{a-1} f, hazard a lambda. Declared log-concave when
/// the baseline is and a >= 1.
Distribution phm_distribution(const PHModel& m);

/// l(y; a) = log{a y^{1 - 1/a} f(S^{-1}(y^{1/a}))} for 0 < y < 1.
double ell(const PHModel& m, double y);

/// Same quantity as log{a y lambda(Lambda^{-1}(-log(y) / a))}.
double ell_hazard_form(const PHModel& m, double y);

struct PHMResidual {
  double entropy = 0.0;
  double varentropy = 0.0;
  double entropy_error = 0.0;
  double varentropy_error = 0.0;
};

/// Residual entropy and varentropy of X^(a) at age t from integrals of l
/// over (0, S(t)^a), taken in the scaled variable u = y / S(t)^a.
PHMResidual phm_residual_information(const PHModel& m, double t, const QuadConfig& cfg = {});
double phm_residual_entropy(const PHModel& m, double t, const QuadConfig& cfg = {});
double phm_residual_varentropy(const PHModel& m, double t, const QuadConfig& cfg = {});

/// n units in series: the minimum of n i.i.d. lifetimes. Throws DomainError if n < 1.
PHModel series_system(int n, Distribution unit);

struct ReferenceInterval {
  double entropy = 0.0;
  double varentropy = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// H(X_t^(a)) -/+ k sqrt(V(X_t^(a))). Throws NumericalError when the computed
/// V is negative beyond round-off.
ReferenceInterval reference_interval(const PHModel& m, double t, double k,
                                     const QuadConfig& cfg = {});

/// Scale of the Weibull(k = 2) reference-interval baseline: lambda = 2/pi
/// or the unit-mean 2/sqrt(pi).
enum class WeibullScale { TwoOverPi, UnitMean };

struct NamedFamily {
  std::string label;
  ParametricFamily family;
};

/// Weibull(k = 2), gamma(r = 2, theta = 1/2) and lognormal(mu = -1/2, sigma = 1).
std::vector<NamedFamily> reference_interval_baselines(WeibullScale scale);

/// E[X] of a lifetime, as the vitality at the lower support end.
double lifetime_mean(const Distribution& d, const QuadConfig& cfg = {});

}  // namespace resvar
