#pragma once

#include <array>
#include <vector>

#include "resvar/distributions.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

struct InfoMeasurePair {
  double entropy = 0.0;
  double varentropy = 0.0;
  double entropy_error = 0.0;
  double varentropy_error = 0.0;
};

/// -log f(x). Throws DomainError where f(x) == 0.
double information_content(const Distribution& d, double x);

/// H = -int f log f over the whole support.
double entropy(const Distribution& d, const QuadConfig& cfg = {});

/// V = int f (log f + H)^2.
double varentropy(const Distribution& d, const QuadConfig& cfg = {});

InfoMeasurePair entropy_and_varentropy(const Distribution& d, const QuadConfig& cfg = {});

/// E[(log f)^2] - H^2, the textbook form. Loses digits when H is large;
/// kept for cross-checking.
double varentropy_raw(const Distribution& d, const QuadConfig& cfg = {});

/// Finite law with distinct support points. Zero-probability atoms are
/// dropped on construction.
class DiscreteDistribution {
 public:
  /// Throws ParameterError unless probabilities are non-negative, sum to one
  /// within 1e-12, and the points are distinct.
  DiscreteDistribution(std::vector<double> points, std::vector<double> probs);

  /// P(X = h) = p, P(X = 0) = 1 - p - q, P(X = -h) = q.
  static DiscreteDistribution three_point(double p, double q, double h = 1.0);
  /// P(Y = 1) = theta, P(Y = 0) = 1 - theta.
  static DiscreteDistribution bernoulli(double theta);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> points_;
  std::vector<double> probs_;
};

double discrete_entropy(const DiscreteDistribution& d);
double discrete_varentropy(const DiscreteDistribution& d);

struct SimplexPoint {
  double p = 0.0;
  double q = 0.0;
  double varentropy = 0.0;
};

struct ThreePointReport {
  /// The seven (p, q) pairs where V vanishes, with the computed V.
  std::vector<SimplexPoint> zeros;
  /// The maximizer and its two images under permutation of the atoms;
  /// the first entry has the smallest p + q.
  std::array<SimplexPoint, 3> maximizers;
};

/// Varentropy of the three-point law at its known zeros, and its maximum
/// over the simplex by a 400 x 400 grid followed by compass refinement.
/// The spacing h does not enter the discrete law and is accepted for
/// interface symmetry with the Gaussian mixture.
ThreePointReport discrete_varentropy_zeros_and_max(double h = 1.0);

}  // namespace resvar
