#include "resvar/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resvar/errors.hpp"
#include "resvar/residual.hpp"

namespace resvar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLogTiny = -690.77552789821368;  // log(1e-300)
constexpr int kProbePoints = 512;
constexpr double kLogSlack = 1e-12;

std::vector<double> tail_nodes(const Distribution& d, const ResidualState& st) {
  std::vector<double> levels;
  for (int j = 1; j < 4; ++j) levels.push_back(1.0 - j / 16.0);
  for (int k = 1; k <= 160; ++k) levels.push_back(std::exp2(-k / 4.0));
  std::vector<double> nodes{st.t};
  const double hi = d.support_high();
  for (double r : levels) {
    const double x = d.inverse_survival(st.survival * r);
    if (std::isfinite(x) && x > nodes.back() && x < hi) nodes.push_back(x);
  }
  return nodes;
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::LowerCP:
      return "lower_cp";
    case BoundKind::UpperLogConcave:
      return "upper_logconcave";
    case BoundKind::UpperWeighted:
      return "upper_weighted";
  }
  return "unknown";
}

BoundReport cp_lower_bound(const Distribution& d, double t, const QuadConfig& cfg) {
  const ResidualState st = residual_state(d, t);
  BoundReport r;
  r.kind = BoundKind::LowerCP;
  r.t = t;
  r.measured_v = residual_varentropy(d, t, cfg);

  double m = 0.0;
  double sigma2 = 0.0;
  try {
    m = mean_residual_life(d, t, cfg);
    sigma2 = variance_residual_life(d, t, cfg);
  } catch (const DivergenceError& e) {
    r.note = e.what();
    return r;
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    r.note = "variance residual life is not positive and finite";
    return r;
  }
  r.hypothesis_ok = true;

  const double lambda_t = st.cumulative_hazard;
  QuadConfig table_cfg = cfg;
  table_cfg.abs_tol = std::min(cfg.abs_tol, 1e-14);
  table_cfg.rel_tol = std::min(cfg.rel_tol, 1e-12);
  table_cfg.max_subdivisions = std::max(cfg.max_subdivisions, 4000);
  const double shift = t + m;
  TailIntegral numerator(
      [&d, shift, lambda_t](double z) {
        const double lf = d.log_pdf(z);
        if (!(lf >= kLogTiny)) return 0.0;
        return (z - shift) * std::exp(lf + lambda_t);
      },
      tail_nodes(d, st), d.support_high(), table_cfg);

  // w as a function of the original abscissa y = x + t.
  auto w = [&](double y) {
    const double lf = d.log_pdf(y);
    if (!(lf >= kLogTiny)) return 0.0;
    return numerator(y) / (sigma2 * std::exp(lf + lambda_t));
  };
  const double lo = std::max(t, d.support_low());
  const double hi = d.support_high();
  auto w_prime = [&](double y) { return differentiate(w, y, 0.0, lo, hi).value; };
  auto log_f_prime = [&](double y) {
    return differentiate([&d](double x) { return d.log_pdf(x); }, y, 0.0, lo, hi).value;
  };

  QuadConfig outer = cfg;
  outer.abs_tol = std::max(cfg.abs_tol, 1e-9);
  outer.rel_tol = std::max(cfg.rel_tol, 1e-8);
  const double ew = conditional_expectation(d, t, [&](double y, double) { return w_prime(y); }, outer)
                        .value;
  const double ewg =
      conditional_expectation(d, t, [&](double y, double) { return -w(y) * log_f_prime(y); }, outer)
          .value;
  r.bound_value = sigma2 * ew * ew;
  r.cross_check = sigma2 * ewg * ewg;
  r.slack = r.measured_v - r.bound_value;
  return r;
}

BoundReport logconcave_upper_bound(const Distribution& d, double t, const QuadConfig& cfg) {
  BoundReport r;
  r.kind = BoundKind::UpperLogConcave;
  r.t = t;
  r.measured_v = residual_varentropy(d, t, cfg);
  r.hypothesis_ok = d.log_concave();
  if (r.hypothesis_ok) {
    r.bound_value = 1.0;
    r.slack = 1.0 - r.measured_v;
    r.note = "residual density inherits log-concavity";
  } else {
    r.note = "density not declared log-concave";
  }
  return r;
}

double weighted_hypothesis_witness(const Distribution& d, double alpha, double beta) {
  std::vector<double> probes;
  const double lo = d.support_low();
  const double hi = d.support_high();
  if (lo > 0.0) probes.push_back(0.0);
  probes.push_back(std::max(lo, 0.0));
  for (int i = 0; i < kProbePoints; ++i) {
    probes.push_back(d.quantile((i + 0.5) / kProbePoints));
  }
  if (std::isfinite(hi)) {
    probes.push_back(hi);
    probes.push_back(hi + 1e-6 * std::max(1.0, std::abs(hi)));
  }
  for (double x : probes) {
    if (x < 0.0) continue;
    const double lf = d.log_pdf(x);
    const bool upper_ok = lf <= kLogSlack;
    const bool lower_ok = -alpha * x - beta <= lf + kLogSlack;
    if (!upper_ok || !lower_ok) return x;
  }
  return kNaN;
}

BoundReport weighted_upper_bound(const Distribution& d, double t, double alpha, double beta,
                                 const QuadConfig& cfg) {
  if (!(alpha > 0.0)) throw ParameterError("weighted bound needs alpha > 0");
  if (!(beta >= 0.0)) throw ParameterError("weighted bound needs beta >= 0");
  if (!(t >= 0.0)) throw DomainError("weighted bound needs t >= 0");
  BoundReport r;
  r.kind = BoundKind::UpperWeighted;
  r.t = t;
  const ResidualInformation info = residual_information(d, t, cfg);
  r.measured_v = info.varentropy;
  r.witness = weighted_hypothesis_witness(d, alpha, beta);
  if (!std::isnan(r.witness)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "hypothesis exp(-alpha x - beta) <= f(x) <= 1 fails at x = " << r.witness;
    r.note = msg.str();
    return r;
  }
  r.hypothesis_ok = true;
  r.note = "hypothesis holds on the probe grid";
  const double lambda = residual_state(d, t).cumulative_hazard;
  const double delta = vitality(d, t, cfg);
  const double hw = weighted_residual_entropy(d, t, cfg);
  const double s = lambda + info.entropy;
  r.bound_value = alpha * (lambda * delta + hw) + beta * s - s * s;
  r.slack = r.bound_value - r.measured_v;
  return r;
}

}  // namespace resvar
