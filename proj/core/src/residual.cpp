#include "resvar/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "resvar/errors.hpp"

namespace resvar {
namespace {

std::string age_message(const std::string& what, double t) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at age t = " << t;
  return msg.str();
}

class ResidualModel final : public DistributionModel {
 public:
  ResidualModel(Distribution base, ResidualState state)
      : base_(std::move(base)), st_(state) {}

  std::string name() const override {
    std::ostringstream out;
    out.precision(17);
    out << "residual(" << base_.name() << ",t=" << st_.t << ")";
    return out.str();
  }
  double support_low() const override { return std::max(base_.support_low() - st_.t, 0.0); }
  double support_high() const override { return base_.support_high() - st_.t; }
  bool log_concave() const override { return base_.log_concave(); }

  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    return std::exp(log_pdf(x));
  }
  double log_pdf(double x) const override {
    if (x < 0.0) return -kInf;
    return base_.log_pdf(x + st_.t) + st_.cumulative_hazard;
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return std::exp(-cumulative_hazard(x));
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return -std::expm1(-cumulative_hazard(x));
  }
  double cumulative_hazard(double x) const override {
    if (x <= 0.0) return 0.0;
    return base_.cumulative_hazard(x + st_.t) - st_.cumulative_hazard;
  }
  double hazard(double x) const override { return base_.hazard(std::max(x, 0.0) + st_.t); }
  double inverse_survival(double s) const override {
    if (s >= 1.0) return 0.0;
    return std::max(base_.inverse_survival(s * st_.survival) - st_.t, 0.0);
  }
  double quantile(double u) const override { return inverse_survival(1.0 - u); }

 private:
  Distribution base_;
  ResidualState st_;
};

double log_hazard_at(const Distribution& d, double x, double log_pdf) {
  const double lh = std::log(d.hazard(x));
  if (std::isfinite(lh)) return lh;
  return log_pdf + d.cumulative_hazard(x);
}

// int_t^hi k(x) S(x) / S(t) dx over probability breakpoints.
QuadResult survival_integral(const Distribution& d, const ResidualState& st,
                             const RealFunction& k, const QuadConfig& cfg) {
  auto integrand = [&](double x) {
    const double ratio = std::exp(st.cumulative_hazard - d.cumulative_hazard(x));
    return ratio > 0.0 ? k(x) * ratio : 0.0;
  };
  const std::vector<double> pts = probability_breakpoints(d, st.t);
  return integrate(integrand, std::span<const double>(pts), cfg);
}

void require_positive_density(const Distribution& d, double t) {
  if (!(d.pdf(t) > 0.0)) {
    throw DomainError(age_message("derivative identity needs f(t) > 0", t));
  }
}

}  // namespace

ResidualState residual_state(const Distribution& d, double t) {
  if (!std::isfinite(t)) throw DomainError(age_message("age must be finite", t));
  const double s = d.survival(t);
  if (!(s >= kMinResidualSurvival)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "age t = " << t << " outside the domain: survival S(t) = " << s << " < "
        << kMinResidualSurvival;
    throw DomainError(msg.str());
  }
  const double lambda = t <= d.support_low() ? 0.0 : d.cumulative_hazard(t);
  return {t, s, lambda};
}

Distribution residual_density(const Distribution& d, double t) {
  return Distribution(std::make_shared<ResidualModel>(d, residual_state(d, t)));
}

ResidualInformation residual_information(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(d, t);
  ResidualInformation out;

  const QuadResult e1 = conditional_expectation(d, t, [](double, double lf) { return lf; }, cfg);
  out.entropy = -st.cumulative_hazard - e1.value;
  out.entropy_error = e1.error_estimate;

  const QuadResult e2 = conditional_expectation(
      d, t, [&d](double x, double lf) { return log_hazard_at(d, x, lf); }, cfg);
  out.entropy_hazard_form = 1.0 - e2.value;
  out.entropy_hazard_form_error = e2.error_estimate;

  const double gap = std::abs(out.entropy - out.entropy_hazard_form);
  const double allowed = std::max(1e-7 * (1.0 + std::abs(out.entropy)),
                                  10.0 * (out.entropy_error + out.entropy_hazard_form_error));
  if (!(gap <= allowed)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "residual entropy forms disagree at age t = " << t << ": " << out.entropy << " vs "
        << out.entropy_hazard_form << " (gap " << gap << ", allowed " << allowed << ")";
    throw NumericalError(msg.str());
  }

  const double shift = st.cumulative_hazard + out.entropy;
  const QuadResult v = conditional_expectation(
      d, t,
      [shift](double, double lf) {
        const double c = lf + shift;
        return c * c;
      },
      cfg);
  out.varentropy = v.value;
  out.varentropy_error = v.error_estimate;
  return out;
}

double residual_entropy(const Distribution& d, double t, const QuadConfig& cfg) {
  return residual_information(d, t, cfg).entropy;
}

double residual_varentropy(const Distribution& d, double t, const QuadConfig& cfg) {
  return residual_information(d, t, cfg).varentropy;
}

VarentropyForms residual_varentropy_forms(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualInformation info = residual_information(d, t, cfg);
  const double lambda = residual_state(d, t).cumulative_hazard;
  VarentropyForms out;
  out.central = info.varentropy;
  const double m2 =
      conditional_expectation(d, t, [](double, double lf) { return lf * lf; }, cfg).value;
  const double shift = lambda + info.entropy;
  out.raw = m2 - shift * shift;
  const double c2 = conditional_expectation(
                        d, t,
                        [lambda](double, double lf) {
                          const double c = lf + lambda;
                          return c * c;
                        },
                        cfg)
                        .value;
  out.conditioned = c2 - info.entropy * info.entropy;
  return out;
}

double residual_entropy_derivative(const Distribution& d, double t, const QuadConfig& cfg) {
  require_positive_density(d, t);
  const double h = residual_entropy(d, t, cfg);
  const double lambda = d.hazard(t);
  return lambda * (h - 1.0 + std::log(lambda));
}

double residual_varentropy_derivative(const Distribution& d, double t, const QuadConfig& cfg) {
  require_positive_density(d, t);
  const ResidualInformation info = residual_information(d, t, cfg);
  const double lambda = d.hazard(t);
  const double g = info.entropy + std::log(lambda);
  return lambda * (info.varentropy - g * g);
}

bool tail_moment_finite(const Distribution& d, double t, int order) {
  if (std::isfinite(d.support_high())) return true;
  const double s0 = d.survival(t);
  const double s1 = s0 * 1e-8;
  const double s2 = s0 * 1e-12;
  if (!(s2 > 1e-300)) return true;
  const double x1 = std::abs(d.inverse_survival(s1));
  const double x2 = std::abs(d.inverse_survival(s2));
  const double r1 = std::pow(x1, order) * s1;
  const double r2 = std::pow(x2, order) * s2;
  return r2 < 0.5 * r1;
}

double mean_residual_life(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(d, t);
  if (!tail_moment_finite(d, t, 1)) {
    throw DivergenceError(age_message("mean residual life is infinite", t));
  }
  return survival_integral(d, st, [](double) { return 1.0; }, cfg).value;
}

double variance_residual_life(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(d, t);
  if (!tail_moment_finite(d, t, 2)) {
    throw DivergenceError(age_message("variance residual life is infinite", t));
  }
  const double m = mean_residual_life(d, t, cfg);
  const double second = survival_integral(d, st, [t](double y) { return y - t; }, cfg).value;
  return 2.0 * second - m * m;
}

double vitality(const Distribution& d, double t, const QuadConfig& cfg) {
  return mean_residual_life(d, t, cfg) + t;
}

double weighted_residual_entropy(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(d, t);
  if (!tail_moment_finite(d, t, 1)) {
    throw DivergenceError(age_message("weighted residual entropy diverges", t));
  }
  const double lambda = st.cumulative_hazard;
  return -conditional_expectation(d, t, [lambda](double x, double lf) { return x * (lf + lambda); },
                                  cfg)
              .value;
}

ConstancyReport constancy_characterization(const Distribution& d, const std::vector<double>& ages,
                                           double tol, const QuadConfig& cfg) {
  if (ages.empty()) throw ParameterError("constancy check needs at least one age");
  ConstancyReport r;
  r.ages = ages;
  for (double t : ages) {
    residual_state(d, t);
    const double lambda = d.hazard(t);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw DomainError(age_message("hazard rate is not positive and finite", t));
    }
  }

  const double t0 = std::max(0.0, d.support_low());
  const ResidualInformation base = residual_information(d, t0, cfg);
  r.entropy_at_zero = base.entropy;
  r.varentropy_at_zero = base.varentropy;

  for (double t : ages) {
    const ResidualInformation info = residual_information(d, t, cfg);
    r.g.push_back(info.entropy + std::log(d.hazard(t)));
    r.varentropy.push_back(info.varentropy);
  }
  const auto [lo, hi] = std::minmax_element(r.g.begin(), r.g.end());
  r.spread = *hi - *lo;
  r.c_estimate = std::accumulate(r.g.begin(), r.g.end(), 0.0) / static_cast<double>(r.g.size());
  r.is_constant = r.spread <= tol;

  const double c = r.c_estimate;
  r.generalized_hazard_target = std::exp(c - r.entropy_at_zero);
  for (std::size_t i = 0; i < ages.size(); ++i) {
    const double t = ages[i];
    const double gh = generalized_hazard(d, t, c - 1.0);
    r.generalized_hazard.push_back(gh);
    r.generalized_hazard_max_error =
        std::max(r.generalized_hazard_max_error, std::abs(gh - r.generalized_hazard_target));

    const double predicted = c * c + (r.varentropy_at_zero - c * c) / d.survival(t);
    r.varentropy_predicted.push_back(predicted);
    r.varentropy_max_error =
        std::max(r.varentropy_max_error, std::abs(r.varentropy[i] - predicted));
    r.sqrt_v_max_error = std::max(
        r.sqrt_v_max_error, std::abs(std::abs(r.g[i]) - std::sqrt(std::max(r.varentropy[i], 0.0))));
  }
  r.gpd_check = r.generalized_hazard_max_error <= tol;
  r.varentropy_check = r.varentropy_max_error <= tol;
  return r;
}

LinearTransformReport linear_transform_check(const Distribution& d, double a, double b, double t,
                                             const QuadConfig& cfg) {
  if (!(a > 0.0)) throw ParameterError("linear transform needs a > 0");
  if (!(b >= 0.0)) throw ParameterError("linear transform needs b >= 0");
  if (t < b) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "age t = " << t << " is below the shift b = " << b << "; Y has no mass there";
    throw DomainError(msg.str());
  }
  const Distribution y = linear_transform(d, a, b);
  LinearTransformReport r;
  r.t = t;
  r.mapped_age = (t - b) / a;
  const ResidualInformation iy = residual_information(y, t, cfg);
  const ResidualInformation ix = residual_information(d, r.mapped_age, cfg);
  r.entropy_y = iy.entropy;
  r.entropy_x = ix.entropy;
  r.varentropy_y = iy.varentropy;
  r.varentropy_x = ix.varentropy;
  r.entropy_error = std::abs(iy.entropy - ix.entropy - std::log(a));
  r.varentropy_error = std::abs(iy.varentropy - ix.varentropy);
  return r;
}

}  // namespace resvar
