#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "resvar/quadrature.hpp"

namespace resvar {

/// Evaluators of a continuous lifetime law on [support_low, support_high].
///
/// Closed-form families override what they can; everything else falls back
/// to the relations F = 1 - S, Lambda = -log S, lambda = f / S and numeric
/// inversion of the distribution function. Implementations are immutable
/// and safe to share between threads.
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  /// Canonical family specification, e.g. "weibull(lambda=1,k=3.5)".
  virtual std::string name() const = 0;
  virtual double support_low() const { return 0.0; }
  virtual double support_high() const { return kInf; }
  /// Declared, not detected.
  virtual bool log_concave() const { return false; }

  virtual double pdf(double x) const = 0;
  virtual double log_pdf(double x) const;
  virtual double survival(double x) const = 0;
  virtual double cdf(double x) const;
  virtual double cumulative_hazard(double x) const;
  virtual double hazard(double x) const;
  /// F^{-1}(u) for u in [0, 1].
  virtual double quantile(double u) const;
  /// S^{-1}(s) for s in [0, 1]; accurate in the upper tail.
  virtual double inverse_survival(double s) const;
};

/// Value handle to an immutable DistributionModel.
class Distribution {
 public:
  explicit Distribution(std::shared_ptr<const DistributionModel> model);

  std::string name() const { return model_->name(); }
  double support_low() const { return model_->support_low(); }
  double support_high() const { return model_->support_high(); }
  bool log_concave() const { return model_->log_concave(); }

  double pdf(double x) const { return model_->pdf(x); }
  double log_pdf(double x) const { return model_->log_pdf(x); }
  double cdf(double x) const { return model_->cdf(x); }
  double survival(double x) const { return model_->survival(x); }
  double hazard(double x) const { return model_->hazard(x); }
  double cumulative_hazard(double x) const { return model_->cumulative_hazard(x); }
  double quantile(double u) const { return model_->quantile(u); }
  double inverse_survival(double s) const { return model_->inverse_survival(s); }

  /// min(support_high, S^{-1}(tail_cut)).
  double effective_high(double tail_cut = 1e-12) const;

  const DistributionModel& model() const { return *model_; }
  const std::shared_ptr<const DistributionModel>& model_ptr() const { return model_; }

  template <class Model>
  const Model* as() const {
    return dynamic_cast<const Model*>(model_.get());
  }

 private:
  std::shared_ptr<const DistributionModel> model_;
};

// Parametric families. Field names follow the usual parameterizations.

struct Uniform {
  double theta;  // support (0, theta)
};
struct Exponential {
  double lambda;  // rate
};
/// f(x) = 2(1 - x) on (0, 1).
struct Triangular {};
struct Weibull {
  double lambda;  // scale
  double k;       // shape
};
struct Gamma {
  double r;      // shape
  double theta;  // scale
};
struct Lognormal {
  double mu;
  double sigma;
};
/// S(t) = (b / (a t + b))^{1/a + 1}; a = 0 is the exponential limit with mean b.
struct GeneralizedPareto {
  double a;
  double b;
};
/// f(t) = lambda / (1 + lambda t)^2, S(t) = 1 / (1 + lambda t).
struct ModifiedPareto {
  double lambda;
};
/// S(t) = 1 - (1 - exp(-lambda t))^b.
struct GeneralizedExponential {
  double lambda;
  double b;
};
/// Unit-variance normal kernels at h, 0, -h with weights p, 1 - p - q, q.
/// Supported on the whole real line.
struct GaussianMixture3 {
  double p;
  double q;
  double h;
};

using ParametricFamily =
    std::variant<Uniform, Exponential, Triangular, Weibull, Gamma, Lognormal, GeneralizedPareto,
                 ModifiedPareto, GeneralizedExponential, GaussianMixture3>;

/// Throws ParameterError naming the violated constraint.
Distribution make_distribution(const ParametricFamily& family);

/// Canonical "name(param=value,...)" form.
std::string to_string(const ParametricFamily& family);

/// Y = scale * X + shift with density f((y - shift) / scale) / scale.
Distribution linear_transform(const Distribution& x, double scale, double shift);

/// f(t) / S(t)^{1 + alpha}. Throws DomainError when S(t) == 0.
double generalized_hazard(const Distribution& d, double t, double alpha);

/// Density known only through its pdf; survival and quantile are obtained
/// by quadrature and root finding.
///
/// The survival function is tabulated once at construction as panel
/// integrals of the pdf, so later evaluations cost one local integral.
class NumericDensity final : public DistributionModel {
 public:
  struct Options {
    double mass_tolerance = 1e-6;
    /// Point beyond which the density is negligible; NaN lets the
    /// constructor search for it. Ignored for finite supports.
    double effective_high = std::numeric_limits<double>::quiet_NaN();
    std::string name = "numeric";
    int panels = 256;
  };

  NumericDensity(RealFunction pdf, double low, double high, Options options);

  std::string name() const override { return options_.name; }
  double support_low() const override { return low_; }
  double support_high() const override { return high_; }

  /// Normalized density: the wrapped pdf divided by mass().
  double pdf(double x) const override;
  double survival(double x) const override;
  double cdf(double x) const override;

  /// Integral of the wrapped pdf over the support.
  double mass() const { return mass_; }
  double tabulation_limit() const { return table_->nodes().back(); }

 private:
  RealFunction raw_pdf_;
  double low_;
  double high_;
  Options options_;
  double mass_ = 1.0;
  std::unique_ptr<TailIntegral> table_;
};

/// Wraps a bare pdf as a Distribution. Throws MassError (reporting the
/// computed mass) when the total mass deviates from one by more than
/// mass_tolerance.
Distribution from_pdf(RealFunction pdf, double low, double high,
                      NumericDensity::Options options = {});

/// Parsed "name(key=value,...)" call. Names and keys are lower-cased.
struct SpecCall {
  std::string name;
  std::vector<std::pair<std::string, double>> params;

  /// Value of a required parameter; throws SpecParseError when absent.
  double get(const std::string& key) const;
  bool has(const std::string& key) const;
};

/// Parses the specification grammar `name(param=value,...)`. Values are
/// decimal numbers or simple fractions such as -1/3. Throws SpecParseError.
SpecCall parse_spec(const std::string& text);

/// Parses a family specification such as "weibull(lambda=1,k=3.5)".
/// Accepted names: uniform, exponential, triangular, weibull, gamma,
/// lognormal, genpareto, modpareto, genexp, gaussmix3.
ParametricFamily parse_family(const std::string& text);

}  // namespace resvar
