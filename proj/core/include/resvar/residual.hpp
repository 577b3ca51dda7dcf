#pragma once

#include <vector>

#include "resvar/distributions.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {

/// Ages with survival probability below this are refused by every
/// residual operation.
inline constexpr double kMinResidualSurvival = 1e-10;

/// Conditioning data of the residual lifetime X_t = [X - t | X > t].
struct ResidualState {
  double t = 0.0;
  double survival = 1.0;
  double cumulative_hazard = 0.0;
};

/// Throws DomainError naming t and S(t) when S(t) < kMinResidualSurvival.
ResidualState residual_state(const Distribution& d, double t);

/// Law of X_t: pdf f(x + t) / S(t) and survival S(x + t) / S(t).
Distribution residual_density(const Distribution& d, double t);

struct ResidualInformation {
  double entropy = 0.0;
  double entropy_error = 0.0;
  /// Same quantity through the hazard-rate form 1 - E_t[log lambda(X)].
  double entropy_hazard_form = 0.0;
  double entropy_hazard_form_error = 0.0;
  double varentropy = 0.0;
  double varentropy_error = 0.0;
};

/// Residual entropy and varentropy at age t.
///
/// The entropy is computed as -Lambda(t) - E_t[log f] and again through the
/// hazard form; a NumericalError is raised when the two disagree beyond
/// their combined error estimates. The varentropy is returned as the
/// central moment E_t[(log f + Lambda(t) + H)^2].
ResidualInformation residual_information(const Distribution& d, double t,
                                         const QuadConfig& cfg = {});

double residual_entropy(const Distribution& d, double t, const QuadConfig& cfg = {});
double residual_varentropy(const Distribution& d, double t, const QuadConfig& cfg = {});

/// The three algebraically equal expressions of the residual varentropy.
struct VarentropyForms {
  /// E_t[(log f + Lambda + H)^2]
  double central = 0.0;
  /// E_t[(log f)^2] - (Lambda + H)^2
  double raw = 0.0;
  /// E_t[(log(f / S(t)))^2] - H^2
  double conditioned = 0.0;
};
VarentropyForms residual_varentropy_forms(const Distribution& d, double t,
                                          const QuadConfig& cfg = {});

/// lambda(t) [H(X_t) - 1 + log lambda(t)]. Throws DomainError if f(t) == 0.
double residual_entropy_derivative(const Distribution& d, double t, const QuadConfig& cfg = {});

/// lambda(t) {V(X_t) - [H(X_t) + log lambda(t)]^2}. Throws DomainError if f(t) == 0.
double residual_varentropy_derivative(const Distribution& d, double t,
                                      const QuadConfig& cfg = {});

/// m(t) = int_t^inf S / S(t). Throws DivergenceError for tails too heavy
/// for a finite mean.
double mean_residual_life(const Distribution& d, double t, const QuadConfig& cfg = {});

/// sigma^2(t) = (2 / S(t)) int_t^inf (y - t) S(y) dy - m(t)^2.
double variance_residual_life(const Distribution& d, double t, const QuadConfig& cfg = {});

/// delta(t) = m(t) + t.
double vitality(const Distribution& d, double t, const QuadConfig& cfg = {});

/// H^w(X_t) = -E_t[X (log f(X) + Lambda(t))].
double weighted_residual_entropy(const Distribution& d, double t, const QuadConfig& cfg = {});

/// False when the tail of d beyond t decays too slowly for E[X^order] to
/// be finite, judged from x^order S(x) between the survival levels
/// 1e-8 S(t) and 1e-12 S(t).
bool tail_moment_finite(const Distribution& d, double t, int order);

struct ConstancyReport {
  std::vector<double> ages;
  /// H(X_t) + log lambda(t) at each age.
  std::vector<double> g;
  double c_estimate = 0.0;
  double spread = 0.0;
  bool is_constant = false;

  double entropy_at_zero = 0.0;
  double varentropy_at_zero = 0.0;
  /// lambda_{c-1}(t) against e^{c - H(X)}.
  std::vector<double> generalized_hazard;
  double generalized_hazard_target = 0.0;
  double generalized_hazard_max_error = 0.0;
  bool gpd_check = false;

  /// V(X_t) against c^2 + (V(X) - c^2) / S(t).
  std::vector<double> varentropy;
  std::vector<double> varentropy_predicted;
  double varentropy_max_error = 0.0;
  bool varentropy_check = false;

  /// max | |g| - sqrt(V) |, meaningful when V is constant.
  double sqrt_v_max_error = 0.0;
};

ConstancyReport constancy_characterization(const Distribution& d, const std::vector<double>& ages,
                                           double tol = 1e-6, const QuadConfig& cfg = {});

struct LinearTransformReport {
  double t = 0.0;
  double mapped_age = 0.0;
  double entropy_y = 0.0;
  double entropy_x = 0.0;
  double varentropy_y = 0.0;
  double varentropy_x = 0.0;
  /// |H(Y_t) - H(X_s) - log a| with s = (t - b) / a.
  double entropy_error = 0.0;
  /// |V(Y_t) - V(X_s)|.
  double varentropy_error = 0.0;
};

/// Builds Y = aX + b by density transform and compares its residual
/// measures at t with those of X at (t - b) / a. Throws DomainError if t < b.
LinearTransformReport linear_transform_check(const Distribution& d, double a, double b, double t,
                                             const QuadConfig& cfg = {});

}  // namespace resvar
