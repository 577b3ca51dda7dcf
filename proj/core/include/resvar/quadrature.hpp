#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace resvar {

using RealFunction = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance policy shared by every integral in the library.
struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;
  /// Probability mass treated as negligible when a support has to be cut.
  double tail_cut = 1e-12;

  /// Throws ParameterError unless every field is positive.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Either limit may be infinite; infinite ranges are mapped onto a finite
/// interval with x = a + u / (1 - u). The integrand is never evaluated at the
/// end points, so integrable end point singularities are admissible.
/// Throws QuadratureError when the subdivision budget is exhausted (carrying
/// the best estimate) or when f returns a non-finite value.
QuadResult integrate(const RealFunction& f, double a, double b, const QuadConfig& cfg = {});

/// Same as above, but the range is given as a non-decreasing list of
/// breakpoints that seed the subdivision. The first entry may be -inf and
/// the last +inf; the width of the neighbouring finite segment sets the
/// scale of the infinite-range map.
QuadResult integrate(const RealFunction& f, std::span<const double> breakpoints,
                     const QuadConfig& cfg = {});

struct Derivative {
  double value = 0.0;
  /// True when t -/+ step left the domain and a one-sided formula was used.
  bool one_sided = false;
};

/// cbrt(machine epsilon) * max(1, |t|).
double default_step(double t);

/// Central difference (f(t+h) - f(t-h)) / (2h). When t-h < lo or t+h > hi a
/// second order one-sided difference is used instead and flagged.
/// A non-positive step selects default_step(t).
Derivative differentiate(const RealFunction& f, double t, double step = 0.0, double lo = -kInf,
                         double hi = kInf);

/// Tabulated upper integral G(x) = int_x^upper g. Panel integrals between the
/// given nodes are computed once; an evaluation adds one local integral over
/// the partial panel. Immutable after construction.
class TailIntegral {
 public:
  TailIntegral(RealFunction g, std::vector<double> nodes, double upper, QuadConfig cfg);

  double operator()(double x) const;
  double total() const { return tail_.front(); }
  double upper() const { return upper_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  RealFunction g_;
  std::vector<double> nodes_;
  std::vector<double> tail_;
  double upper_;
  QuadConfig cfg_;
};

class Distribution;

/// Integrand of a density expectation: receives x and log f(x).
using DensityIntegrand = std::function<double(double x, double log_pdf)>;

/// Breakpoints for integrating against d on [max(t, support_low), support_high]:
/// the start, points where the survival function has dropped by fixed factors
/// relative to its value at the start, and the upper support limit.
std::vector<double> probability_breakpoints(const Distribution& d, double t);

/// int g(x, log f(x)) f(x) / S(t) dx over x > t, where S is the survival
/// function of d. Integrand values are set to zero wherever f < 1e-300, which
/// realizes the 0 log 0 = 0 convention. Tolerances apply to the conditional
/// expectation. Throws DomainError when S(t) == 0.
QuadResult conditional_expectation(const Distribution& d, double t, const DensityIntegrand& g,
                                   const QuadConfig& cfg = {});

/// int_t^inf h(x) f(x) dx computed in probability space as
/// int_0^{S(t)} h(S^{-1}(s)) ds. The absolute tolerance is scaled by S(t).
QuadResult integrate_by_survival_substitution(const RealFunction& h, const Distribution& d,
                                              double t, const QuadConfig& cfg = {});

}  // namespace resvar
