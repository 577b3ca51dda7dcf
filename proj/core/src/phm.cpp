#include "resvar/phm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "resvar/errors.hpp"
#include "resvar/residual.hpp"

namespace resvar {
namespace {

class PHMModel final : public DistributionModel {
 public:
  PHMModel(Distribution baseline, double a) : base_(std::move(baseline)), a_(a) {}

  std::string name() const override {
    std::ostringstream out;
    out.precision(17);
    out << "phm(a=" << a_ << ")[" << base_.name() << "]";
    return out.str();
  }
  double support_low() const override { return base_.support_low(); }
  double support_high() const override { return base_.support_high(); }
  bool log_concave() const override { return base_.log_concave() && a_ >= 1.0; }

  double pdf(double x) const override {
    const double lf = log_pdf(x);
    return lf == -kInf ? 0.0 : std::exp(lf);
  }
  double log_pdf(double x) const override {
    const double lf = base_.log_pdf(x);
    if (lf == -kInf) return lf;
    const double lambda = base_.cumulative_hazard(x);
    // Baseline survival underflowed: S^(a-1) f is far below the double range.
    if (!std::isfinite(lambda)) return -kInf;
    return std::log(a_) - (a_ - 1.0) * lambda + lf;
  }
  double survival(double x) const override { return std::exp(-cumulative_hazard(x)); }
  double cdf(double x) const override { return -std::expm1(-cumulative_hazard(x)); }
  double cumulative_hazard(double x) const override { return a_ * base_.cumulative_hazard(x); }
  double hazard(double x) const override { return a_ * base_.hazard(x); }
  double inverse_survival(double s) const override {
    if (s <= 0.0) return support_high();
    if (s >= 1.0) return support_low();
    return base_.inverse_survival(std::exp(std::log(s) / a_));
  }
  double quantile(double u) const override {
    if (u <= 0.0) return support_low();
    if (u >= 1.0) return support_high();
    return base_.inverse_survival(std::exp(std::log1p(-u) / a_));
  }

 private:
  Distribution base_;
  double a_;
};

void check_probability(double y) {
  if (!(y > 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "l(y; a) needs 0 < y < 1, got y = " << y;
    throw DomainError(msg.str());
  }
}

}  // namespace

PHModel make_phm(Distribution baseline, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("phm: exponent a > 0");
  return PHModel{std::move(baseline), a};
}

Distribution phm_distribution(const PHModel& m) {
  if (!(m.a > 0.0) || !std::isfinite(m.a)) throw ParameterError("phm: exponent a > 0");
  return Distribution(std::make_shared<PHMModel>(m.baseline, m.a));
}

double ell(const PHModel& m, double y) {
  check_probability(y);
  const double log_y = std::log(y);
  const double x = m.baseline.inverse_survival(std::exp(log_y / m.a));
  return std::log(m.a) + (1.0 - 1.0 / m.a) * log_y + m.baseline.log_pdf(x);
}

double ell_hazard_form(const PHModel& m, double y) {
  check_probability(y);
  const double log_y = std::log(y);
  // Lambda^{-1}(u) = S^{-1}(e^{-u}).
  const double x = m.baseline.inverse_survival(std::exp(log_y / m.a));
  return std::log(m.a) + log_y + std::log(m.baseline.hazard(x));
}

PHMResidual phm_residual_information(const PHModel& m, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(m.baseline, t);
  const double lambda_a = m.a * st.cumulative_hazard;
  const double s_a = std::exp(-lambda_a);
  if (!(s_a >= kMinResidualSurvival)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "age t = " << t << " outside the domain: S(t)^a = " << s_a;
    throw DomainError(msg.str());
  }
  const std::vector<double> pts = {0.0, 1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.5, 1.0};
  auto l_at = [&](double u) { return ell(m, s_a * u); };

  const QuadResult mean = integrate(l_at, std::span<const double>(pts), cfg);
  PHMResidual out;
  out.entropy = -lambda_a - mean.value;
  out.entropy_error = mean.error_estimate;
  const double shift = lambda_a + out.entropy;
  const QuadResult v = integrate(
      [&](double u) {
        const double c = l_at(u) + shift;
        return c * c;
      },
      std::span<const double>(pts), cfg);
  out.varentropy = v.value;
  out.varentropy_error = v.error_estimate;
  return out;
}

double phm_residual_entropy(const PHModel& m, double t, const QuadConfig& cfg) {
  return phm_residual_information(m, t, cfg).entropy;
}

double phm_residual_varentropy(const PHModel& m, double t, const QuadConfig& cfg) {
  return phm_residual_information(m, t, cfg).varentropy;
}

PHModel series_system(int n, Distribution unit) {
  if (n < 1) throw DomainError("series system needs at least one unit");
  return PHModel{std::move(unit), static_cast<double>(n)};
}

ReferenceInterval reference_interval(const PHModel& m, double t, double k, const QuadConfig& cfg) {
  if (!(k >= 0.0)) throw ParameterError("reference interval multiplier k >= 0");
  const PHMResidual info = phm_residual_information(m, t, cfg);
  const double eps = std::max(1e-9, 10.0 * info.varentropy_error);
  if (info.varentropy < -eps) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "negative residual varentropy " << info.varentropy << " at age t = " << t;
    throw NumericalError(msg.str());
  }
  const double half = k * std::sqrt(std::max(info.varentropy, 0.0));
  return {info.entropy, info.varentropy, info.entropy - half, info.entropy + half};
}

std::vector<NamedFamily> reference_interval_baselines(WeibullScale scale) {
  const double lambda =
      scale == WeibullScale::TwoOverPi ? 2.0 / std::numbers::pi : 2.0 * std::numbers::inv_sqrtpi;
  return {{"weibull", Weibull{lambda, 2.0}},
          {"gamma", Gamma{2.0, 0.5}},
          {"lognormal", Lognormal{-0.5, 1.0}}};
}

double lifetime_mean(const Distribution& d, const QuadConfig& cfg) {
  return vitality(d, d.support_low(), cfg);
}

}  // namespace resvar
