#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "resvar/distributions.hpp"
#include "resvar/measure_curve.hpp"
#include "resvar/phm.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

enum class Measure {
  Entropy,           // H
  Varentropy,        // V
  MeanResidualLife,  // m
  VarianceResidual,  // sigma2
  Vitality,          // delta
  WeightedEntropy,   // Hw
  BoundCP,           // bound_cp
  BoundLogConcave,   // bound_lc
  BoundWeighted,     // bound_w
  Interval,          // interval -> interval_lo, interval_hi
};

/// Accepts the CSV column names listed above. Throws SpecParseError.
Measure parse_measure(const std::string& name);
/// Comma-separated list, e.g. "H,V,bound_cp".
std::vector<Measure> parse_measures(const std::string& list);
std::string measure_name(Measure m);

struct MeasureRequest {
  std::vector<Measure> measures;
  /// Envelope parameters of the weighted bound.
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  /// Multiplier of the H -/+ k sqrt(V) interval.
  double interval_k = 2.0;
  bool with_errors = false;
};

/// count equally spaced points from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, int count);
/// count geometrically spaced points; needs 0 < start < stop.
std::vector<double> geometric_grid(double start, double stop, int count);
/// Geometric from stop/1000 to stop/10, then uniform up to stop.
std::vector<double> curve_grid(double stop, int count = 60);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. When bodies throw,
/// the exception of the smallest index is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

/// Evaluates the requested residual measures of d at every age. Failures
/// are rethrown with the failing age prepended to the message.
MeasureCurve evaluate_curve(const Distribution& d, const std::vector<double>& ages,
                            const MeasureRequest& request, const QuadConfig& cfg = {},
                            int jobs = 1);

/// As evaluate_curve, but H, V and the interval come from the l(y; a)
/// integrals of the model.
MeasureCurve evaluate_phm_curve(const PHModel& m, const std::vector<double>& ages,
                                const MeasureRequest& request, const QuadConfig& cfg = {},
                                int jobs = 1);

}  // namespace resvar
