#include "resvar/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "resvar/errors.hpp"

namespace resvar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// log(1 - exp(-x)) for x > 0, accurate at both ends.
double log1mexp(double x) {
  return x <= std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

void require(bool ok, const std::string& constraint) {
  if (!ok) throw ParameterError("parameter constraint violated: " + constraint);
}

// Solves F(x) = p (lower tail) or S(x) = p (upper tail) by bracketing,
// bisection until both ends are finite, then TOMS 748 refinement.
double invert_numerically(const DistributionModel& d, double p, bool upper_tail) {
  const double lo = d.support_low();
  const double hi = d.support_high();
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw DomainError("probability outside [0, 1]: " + number(p));
  }
  if (p == 0.0) return upper_tail ? hi : lo;
  if (p == 1.0) return upper_tail ? lo : hi;

  // Work on the side whose probability is small so logs keep precision.
  // g is non-decreasing in x and vanishes at the solution.
  const double small = std::min(p, 1.0 - p);
  const bool via_survival = (upper_tail == (p <= 0.5));
  const double log_target = (p <= 0.5) ? std::log(p) : std::log1p(-p);
  (void)small;
  auto g = [&](double x) -> double {
    if (via_survival) return log_target + d.cumulative_hazard(x);
    const double F = d.cdf(x);
    return std::log(F) - log_target;
  };

  double a = lo;
  double b = hi;
  if (std::isinf(a) && std::isinf(b)) {
    a = -1.0;
    b = 1.0;
  } else if (std::isinf(b)) {
    b = a + 1.0;
  } else if (std::isinf(a)) {
    a = b - 1.0;
  }
  double ga = g(a);
  double gb = g(b);
  for (int i = 0; i < 2100 && gb < 0.0; ++i) {
    const double width = b - (std::isinf(lo) ? 0.0 : lo);
    a = b;
    ga = gb;
    b = std::isinf(lo) ? (b > 0.0 ? 2.0 * b : 1.0) : lo + 2.0 * std::max(width, 1.0);
    gb = g(b);
  }
  for (int i = 0; i < 2100 && ga > 0.0; ++i) {
    b = a;
    gb = ga;
    a = a < 0.0 ? 2.0 * a : -1.0;
    ga = g(a);
  }
  if (!(ga <= 0.0) || !(gb >= 0.0)) {
    throw NumericalError("could not bracket the quantile of " + d.name() + " at p = " +
                         number(p));
  }
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;

  for (int i = 0; i < 2100 && !(std::isfinite(ga) && std::isfinite(gb)); ++i) {
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    const double gm = g(mid);
    if (std::isnan(gm)) break;
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
      gb = gm;
    }
  }
  if (!(std::isfinite(ga) && std::isfinite(gb))) return 0.5 * (a + b);

  std::uintmax_t iterations = 300;
  const auto bracket = boost::math::tools::toms748_solve(
      g, a, b, ga, gb, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (bracket.first + bracket.second);
}

class UniformModel final : public DistributionModel {
 public:
  explicit UniformModel(double theta) : theta_(theta) {}
  std::string name() const override { return "uniform(theta=" + number(theta_) + ")"; }
  double support_high() const override { return theta_; }
  bool log_concave() const override { return true; }
  double pdf(double x) const override { return (x >= 0.0 && x <= theta_) ? 1.0 / theta_ : 0.0; }
  double log_pdf(double x) const override {
    return (x >= 0.0 && x <= theta_) ? -std::log(theta_) : -kInf;
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    if (x >= theta_) return 0.0;
    return (theta_ - x) / theta_;
  }
  double cdf(double x) const override { return std::clamp(x / theta_, 0.0, 1.0); }
  double cumulative_hazard(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= theta_) return kInf;
    return -std::log1p(-x / theta_);
  }
  double hazard(double x) const override {
    if (x >= theta_) return kInf;
    return 1.0 / (theta_ - std::max(x, 0.0));
  }
  double quantile(double u) const override { return u * theta_; }
  double inverse_survival(double s) const override { return (1.0 - s) * theta_; }

 private:
  double theta_;
};

class ExponentialModel final : public DistributionModel {
 public:
  explicit ExponentialModel(double rate, std::string name) : rate_(rate), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  bool log_concave() const override { return true; }
  double pdf(double x) const override { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }
  double log_pdf(double x) const override {
    return x < 0.0 ? -kInf : std::log(rate_) - rate_ * x;
  }
  double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }
  double cumulative_hazard(double x) const override { return x <= 0.0 ? 0.0 : rate_ * x; }
  double hazard(double) const override { return rate_; }
  double quantile(double u) const override { return -std::log1p(-u) / rate_; }
  double inverse_survival(double s) const override { return -std::log(s) / rate_; }

 private:
  double rate_;
  std::string name_;
};

class TriangularModel final : public DistributionModel {
 public:
  std::string name() const override { return "triangular()"; }
  double support_high() const override { return 1.0; }
  bool log_concave() const override { return true; }
  double pdf(double x) const override { return (x >= 0.0 && x <= 1.0) ? 2.0 * (1.0 - x) : 0.0; }
  double log_pdf(double x) const override {
    return (x >= 0.0 && x < 1.0) ? std::numbers::ln2 + std::log1p(-x) : -kInf;
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return (1.0 - x) * (1.0 - x);
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * (2.0 - x);
  }
  double cumulative_hazard(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return kInf;
    return -2.0 * std::log1p(-x);
  }
  double hazard(double x) const override { return x >= 1.0 ? kInf : 2.0 / (1.0 - std::max(x, 0.0)); }
  double quantile(double u) const override { return 1.0 - std::sqrt(1.0 - u); }
  double inverse_survival(double s) const override { return 1.0 - std::sqrt(s); }
};

class WeibullModel final : public DistributionModel {
 public:
  WeibullModel(double scale, double shape) : scale_(scale), shape_(shape) {}
  std::string name() const override {
    return "weibull(lambda=" + number(scale_) + ",k=" + number(shape_) + ")";
  }
  bool log_concave() const override { return shape_ >= 1.0; }
  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    return std::exp(log_pdf(x));
  }
  double log_pdf(double x) const override {
    if (x < 0.0) return -kInf;
    const double z = x / scale_;
    double lp = std::log(shape_ / scale_) - std::pow(z, shape_);
    if (shape_ != 1.0) lp += (shape_ - 1.0) * std::log(z);
    return lp;
  }
  double survival(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
  }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
  }
  double cumulative_hazard(double x) const override {
    return x <= 0.0 ? 0.0 : std::pow(x / scale_, shape_);
  }
  double hazard(double x) const override {
    if (x < 0.0) return 0.0;
    if (shape_ == 1.0) return 1.0 / scale_;
    return shape_ / scale_ * std::pow(x / scale_, shape_ - 1.0);
  }
  double quantile(double u) const override {
    return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
  }
  double inverse_survival(double s) const override {
    return scale_ * std::pow(-std::log(s), 1.0 / shape_);
  }

 private:
  double scale_;
  double shape_;
};

class GammaModel final : public DistributionModel {
 public:
  GammaModel(double shape, double scale)
      : shape_(shape), scale_(scale), log_norm_(std::lgamma(shape) + std::log(scale)) {}
  std::string name() const override {
    return "gamma(r=" + number(shape_) + ",theta=" + number(scale_) + ")";
  }
  bool log_concave() const override { return shape_ >= 1.0; }
  double pdf(double x) const override { return x < 0.0 ? 0.0 : std::exp(log_pdf(x)); }
  double log_pdf(double x) const override {
    if (x < 0.0) return -kInf;
    const double z = x / scale_;
    double lp = -z - log_norm_;
    if (shape_ != 1.0) lp += (shape_ - 1.0) * std::log(z);
    return lp;
  }
  double survival(double x) const override {
    return x <= 0.0 ? 1.0 : boost::math::gamma_q(shape_, x / scale_);
  }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : boost::math::gamma_p(shape_, x / scale_);
  }

 private:
  double shape_;
  double scale_;
  double log_norm_;
};

class LognormalModel final : public DistributionModel {
 public:
  LognormalModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {}
  std::string name() const override {
    return "lognormal(mu=" + number(mu_) + ",sigma=" + number(sigma_) + ")";
  }
  double pdf(double x) const override { return x <= 0.0 ? 0.0 : std::exp(log_pdf(x)); }
  double log_pdf(double x) const override {
    if (x <= 0.0) return -kInf;
    const double lx = std::log(x);
    const double z = (lx - mu_) / sigma_;
    return -0.5 * z * z - lx - std::log(sigma_) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return 0.5 * std::erfc((std::log(x) - mu_) / (sigma_ * std::numbers::sqrt2));
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return 0.5 * std::erfc(-(std::log(x) - mu_) / (sigma_ * std::numbers::sqrt2));
  }

 private:
  double mu_;
  double sigma_;
};

class GeneralizedParetoModel final : public DistributionModel {
 public:
  GeneralizedParetoModel(double a, double b) : a_(a), b_(b) {}
  std::string name() const override {
    return "genpareto(a=" + number(a_) + ",b=" + number(b_) + ")";
  }
  double support_high() const override { return a_ < 0.0 ? -b_ / a_ : kInf; }
  bool log_concave() const override { return a_ <= 0.0; }
  double pdf(double x) const override {
    if (x < 0.0 || x > support_high()) return 0.0;
    return std::exp(log_pdf(x));
  }
  double log_pdf(double x) const override {
    if (x < 0.0 || x >= support_high()) return -kInf;
    return std::log(hazard(x)) - cumulative_hazard(x);
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    if (x >= support_high()) return 0.0;
    return std::exp(-cumulative_hazard(x));
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= support_high()) return 1.0;
    return -std::expm1(-cumulative_hazard(x));
  }
  double cumulative_hazard(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= support_high()) return kInf;
    if (a_ == 0.0) return x / b_;
    return (1.0 / a_ + 1.0) * std::log1p(a_ * x / b_);
  }
  double hazard(double x) const override {
    if (x >= support_high()) return kInf;
    return (1.0 + a_) / (a_ * std::max(x, 0.0) + b_);
  }
  double quantile(double u) const override { return from_log_survival(std::log1p(-u)); }
  double inverse_survival(double s) const override { return from_log_survival(std::log(s)); }

 private:
  double from_log_survival(double log_s) const {
    if (a_ == 0.0) return -b_ * log_s;
    return b_ / a_ * std::expm1(-a_ * log_s / (1.0 + a_));
  }

  double a_;
  double b_;
};

class ModifiedParetoModel final : public DistributionModel {
 public:
  explicit ModifiedParetoModel(double rate) : rate_(rate) {}
  std::string name() const override { return "modpareto(lambda=" + number(rate_) + ")"; }
  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    const double d = 1.0 + rate_ * x;
    return rate_ / (d * d);
  }
  double log_pdf(double x) const override {
    return x < 0.0 ? -kInf : std::log(rate_) - 2.0 * std::log1p(rate_ * x);
  }
  double survival(double x) const override { return x <= 0.0 ? 1.0 : 1.0 / (1.0 + rate_ * x); }
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : rate_ * x / (1.0 + rate_ * x); }
  double cumulative_hazard(double x) const override {
    return x <= 0.0 ? 0.0 : std::log1p(rate_ * x);
  }
  double hazard(double x) const override { return rate_ / (1.0 + rate_ * std::max(x, 0.0)); }
  double quantile(double u) const override { return u / (rate_ * (1.0 - u)); }
  double inverse_survival(double s) const override { return (1.0 - s) / (rate_ * s); }

 private:
  double rate_;
};

class GeneralizedExponentialModel final : public DistributionModel {
 public:
  GeneralizedExponentialModel(double rate, double b) : rate_(rate), b_(b) {}
  std::string name() const override {
    return "genexp(lambda=" + number(rate_) + ",b=" + number(b_) + ")";
  }
  double pdf(double x) const override { return x < 0.0 ? 0.0 : std::exp(log_pdf(x)); }
  double log_pdf(double x) const override {
    if (x < 0.0) return -kInf;
    double lp = std::log(b_ * rate_) - rate_ * x;
    if (b_ != 1.0) lp += (b_ - 1.0) * log1mexp(rate_ * x);
    return lp;
  }
  // log F(x) = b log(1 - e^{-lambda x})
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return -std::expm1(b_ * log1mexp(rate_ * x));
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return std::exp(b_ * log1mexp(rate_ * x));
  }
  double cumulative_hazard(double x) const override {
    if (x <= 0.0) return 0.0;
    return -log1mexp(-b_ * log1mexp(rate_ * x));
  }
  double quantile(double u) const override {
    return -log1mexp(-std::log(u) / b_) / rate_;
  }
  double inverse_survival(double s) const override {
    return -log1mexp(-std::log1p(-s) / b_) / rate_;
  }

 private:
  double rate_;
  double b_;
};

class GaussianMixture3Model final : public DistributionModel {
 public:
  GaussianMixture3Model(double p, double q, double h)
      : p_(p), q_(q), h_(h), weights_{p, 1.0 - p - q, q}, means_{h, 0.0, -h} {}
  std::string name() const override {
    return "gaussmix3(p=" + number(p_) + ",q=" + number(q_) + ",h=" + number(h_) + ")";
  }
  double support_low() const override { return -kInf; }
  double pdf(double x) const override {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double z = x - means_[i];
      sum += weights_[i] * std::exp(-0.5 * z * z);
    }
    return sum / std::sqrt(2.0 * std::numbers::pi);
  }
  double log_pdf(double x) const override {
    double terms[3];
    double top = -kInf;
    for (int i = 0; i < 3; ++i) {
      const double z = x - means_[i];
      terms[i] = weights_[i] > 0.0 ? std::log(weights_[i]) - 0.5 * z * z : -kInf;
      top = std::max(top, terms[i]);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  double survival(double x) const override {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      sum += weights_[i] * 0.5 * std::erfc((x - means_[i]) / std::numbers::sqrt2);
    }
    return std::min(sum, 1.0);
  }
  double cdf(double x) const override {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      sum += weights_[i] * 0.5 * std::erfc(-(x - means_[i]) / std::numbers::sqrt2);
    }
    return std::min(sum, 1.0);
  }

 private:
  double p_;
  double q_;
  double h_;
  double weights_[3];
  double means_[3];
};

// Y = scale * X + shift.
class LinearTransformModel final : public DistributionModel {
 public:
  LinearTransformModel(Distribution base, double scale, double shift)
      : base_(std::move(base)), scale_(scale), shift_(shift) {}
  std::string name() const override {
    return number(scale_) + "*" + base_.name() + "+" + number(shift_);
  }
  double support_low() const override { return map(base_.support_low()); }
  double support_high() const override { return map(base_.support_high()); }
  bool log_concave() const override { return base_.log_concave(); }
  double pdf(double y) const override { return base_.pdf(unmap(y)) / scale_; }
  double log_pdf(double y) const override { return base_.log_pdf(unmap(y)) - std::log(scale_); }
  double survival(double y) const override { return base_.survival(unmap(y)); }
  double cdf(double y) const override { return base_.cdf(unmap(y)); }
  double cumulative_hazard(double y) const override { return base_.cumulative_hazard(unmap(y)); }
  double hazard(double y) const override { return base_.hazard(unmap(y)) / scale_; }
  double quantile(double u) const override { return map(base_.quantile(u)); }
  double inverse_survival(double s) const override { return map(base_.inverse_survival(s)); }

 private:
  double map(double x) const { return scale_ * x + shift_; }
  double unmap(double y) const { return (y - shift_) / scale_; }

  Distribution base_;
  double scale_;
  double shift_;
};

struct Builder {
  Distribution operator()(const Uniform& f) const {
    require(f.theta > 0.0, "uniform: theta > 0");
    return Distribution(std::make_shared<UniformModel>(f.theta));
  }
  Distribution operator()(const Exponential& f) const {
    require(f.lambda > 0.0, "exponential: lambda > 0");
    return Distribution(std::make_shared<ExponentialModel>(
        f.lambda, "exponential(lambda=" + number(f.lambda) + ")"));
  }
  Distribution operator()(const Triangular&) const {
    return Distribution(std::make_shared<TriangularModel>());
  }
  Distribution operator()(const Weibull& f) const {
    require(f.lambda > 0.0, "weibull: lambda > 0");
    require(f.k > 0.0, "weibull: k > 0");
    return Distribution(std::make_shared<WeibullModel>(f.lambda, f.k));
  }
  Distribution operator()(const Gamma& f) const {
    require(f.r > 0.0, "gamma: r > 0");
    require(f.theta > 0.0, "gamma: theta > 0");
    return Distribution(std::make_shared<GammaModel>(f.r, f.theta));
  }
  Distribution operator()(const Lognormal& f) const {
    require(std::isfinite(f.mu), "lognormal: mu finite");
    require(f.sigma > 0.0, "lognormal: sigma > 0");
    return Distribution(std::make_shared<LognormalModel>(f.mu, f.sigma));
  }
  Distribution operator()(const GeneralizedPareto& f) const {
    require(f.a > -1.0 && std::isfinite(f.a), "genpareto: a > -1");
    require(f.b > 0.0, "genpareto: b > 0");
    return Distribution(std::make_shared<GeneralizedParetoModel>(f.a, f.b));
  }
  Distribution operator()(const ModifiedPareto& f) const {
    require(f.lambda > 0.0, "modpareto: lambda > 0");
    return Distribution(std::make_shared<ModifiedParetoModel>(f.lambda));
  }
  Distribution operator()(const GeneralizedExponential& f) const {
    require(f.lambda > 0.0, "genexp: lambda > 0");
    require(f.b > 0.0, "genexp: b > 0");
    return Distribution(std::make_shared<GeneralizedExponentialModel>(f.lambda, f.b));
  }
  Distribution operator()(const GaussianMixture3& f) const {
    require(f.p >= 0.0 && f.q >= 0.0 && f.q <= 1.0 - f.p && f.p <= 1.0,
            "gaussmix3: 0 <= q <= 1 - p <= 1");
    require(f.h > 0.0, "gaussmix3: h > 0");
    return Distribution(std::make_shared<GaussianMixture3Model>(f.p, f.q, f.h));
  }
};

struct Namer {
  std::string operator()(const Uniform& f) const { return "uniform(theta=" + number(f.theta) + ")"; }
  std::string operator()(const Exponential& f) const {
    return "exponential(lambda=" + number(f.lambda) + ")";
  }
  std::string operator()(const Triangular&) const { return "triangular()"; }
  std::string operator()(const Weibull& f) const {
    return "weibull(lambda=" + number(f.lambda) + ",k=" + number(f.k) + ")";
  }
  std::string operator()(const Gamma& f) const {
    return "gamma(r=" + number(f.r) + ",theta=" + number(f.theta) + ")";
  }
  std::string operator()(const Lognormal& f) const {
    return "lognormal(mu=" + number(f.mu) + ",sigma=" + number(f.sigma) + ")";
  }
  std::string operator()(const GeneralizedPareto& f) const {
    return "genpareto(a=" + number(f.a) + ",b=" + number(f.b) + ")";
  }
  std::string operator()(const ModifiedPareto& f) const {
    return "modpareto(lambda=" + number(f.lambda) + ")";
  }
  std::string operator()(const GeneralizedExponential& f) const {
    return "genexp(lambda=" + number(f.lambda) + ",b=" + number(f.b) + ")";
  }
  std::string operator()(const GaussianMixture3& f) const {
    return "gaussmix3(p=" + number(f.p) + ",q=" + number(f.q) + ",h=" + number(f.h) + ")";
  }
};

}  // namespace

double DistributionModel::log_pdf(double x) const { return std::log(pdf(x)); }

double DistributionModel::cdf(double x) const { return 1.0 - survival(x); }

double DistributionModel::cumulative_hazard(double x) const { return -std::log(survival(x)); }

double DistributionModel::hazard(double x) const {
  const double s = survival(x);
  return s > 0.0 ? pdf(x) / s : kInf;
}

double DistributionModel::quantile(double u) const { return invert_numerically(*this, u, false); }

double DistributionModel::inverse_survival(double s) const {
  return invert_numerically(*this, s, true);
}

Distribution::Distribution(std::shared_ptr<const DistributionModel> model)
    : model_(std::move(model)) {
  if (!model_) throw ParameterError("Distribution requires a model");
}

double Distribution::effective_high(double tail_cut) const {
  const double hi = support_high();
  const double cut = inverse_survival(tail_cut);
  return std::min(hi, cut);
}

Distribution make_distribution(const ParametricFamily& family) {
  return std::visit(Builder{}, family);
}

std::string to_string(const ParametricFamily& family) { return std::visit(Namer{}, family); }

Distribution linear_transform(const Distribution& x, double scale, double shift) {
  require(scale > 0.0 && std::isfinite(scale), "linear transform: scale > 0");
  require(std::isfinite(shift), "linear transform: finite shift");
  return Distribution(std::make_shared<LinearTransformModel>(x, scale, shift));
}

double generalized_hazard(const Distribution& d, double t, double alpha) {
  const double s = d.survival(t);
  if (!(s > 0.0)) {
    throw DomainError("generalized hazard undefined at t = " + number(t) + ": survival is 0");
  }
  if (alpha == 0.0) return d.hazard(t);
  return std::exp(d.log_pdf(t) + (1.0 + alpha) * d.cumulative_hazard(t));
}

}  // namespace resvar
