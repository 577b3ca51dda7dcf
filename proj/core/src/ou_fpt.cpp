#include "resvar/ou_fpt.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "resvar/curve.hpp"
#include "resvar/erf.hpp"
#include "resvar/errors.hpp"

namespace resvar {

void OUFPTParams::validate() const {
  auto fail = [](const char* what) { throw ParameterError(std::string("ou-fpt: ") + what); };
  if (!std::isfinite(y) || y == 0.0) fail("initial state y must be finite and nonzero");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("reversion rate alpha > 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) fail("variance parameter nu > 0");
  if (!(xi >= 0.0) || !std::isfinite(xi)) fail("catastrophe rate xi >= 0");
}

double ou_fpt_tilde_pdf(const OUFPTParams& p, double t) {
  if (!(t > 0.0)) return 0.0;
  const double q = -std::expm1(-2.0 * p.alpha * t);
  if (q < 1e-8) return 0.0;
  const double ay = std::abs(p.y);
  const double e2 = std::exp(-2.0 * p.alpha * t);
  const double log_pref = std::log(2.0 * p.alpha * ay) - p.alpha * t -
                          0.5 * std::log(std::numbers::pi * p.nu) - 1.5 * std::log(q);
  return std::exp(log_pref - ay * ay * e2 / (p.nu * q));
}

double ou_fpt_survival(const OUFPTParams& p, double t) {
  if (t <= 0.0) return 1.0;
  const double q = -std::expm1(-2.0 * p.alpha * t);
  const double z = std::abs(p.y) * std::exp(-p.alpha * t) / std::sqrt(p.nu * q);
  return std::exp(-p.xi * t) * resvar::erf(z);
}

double ou_fpt_pdf(const OUFPTParams& p, double t) {
  if (t < 0.0) return 0.0;
  if (t == 0.0) return p.xi;
  const double decay = std::exp(-p.xi * t);
  const double tilde = ou_fpt_tilde_pdf(p, t);
  if (p.xi == 0.0) return tilde;
  const double q = -std::expm1(-2.0 * p.alpha * t);
  const double z = std::abs(p.y) * std::exp(-p.alpha * t) / std::sqrt(p.nu * q);
  return decay * tilde + p.xi * decay * resvar::erf(z);
}

double ou_fpt_effective_high(const OUFPTParams& p) {
  p.validate();
  if (p.xi == 0.0) return std::numeric_limits<double>::quiet_NaN();
  auto envelope = [&](double t) { return std::exp(-p.xi * t) * (ou_fpt_tilde_pdf(p, t) + p.xi); };
  // Past the mode of tilde f the envelope decreases, so scan on a coarse
  // doubling grid and then bisect the crossing.
  double lo = 0.0;
  double hi = 1.0;
  while (envelope(hi) >= 1e-16) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("ou-fpt: envelope never falls below 1e-16");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (envelope(mid) >= 1e-16 ? lo : hi) = mid;
  }
  return hi;
}

Distribution ou_fpt_distribution(const OUFPTParams& p) {
  p.validate();
  NumericDensity::Options opt;
  std::ostringstream name;
  name.precision(17);
  name << "ou_fpt(y=" << p.y << ",alpha=" << p.alpha << ",nu=" << p.nu << ",xi=" << p.xi << ")";
  opt.name = name.str();
  opt.effective_high = ou_fpt_effective_high(p);
  return from_pdf([p](double t) { return ou_fpt_pdf(p, t); }, 0.0, kInf, opt);
}

MeasureCurve ou_fpt_residual_measures(const OUFPTParams& p, const std::vector<double>& ages,
                                      const QuadConfig& cfg, int jobs, bool with_errors) {
  MeasureRequest req;
  req.measures = {Measure::Entropy, Measure::Varentropy};
  req.with_errors = with_errors;
  return evaluate_curve(ou_fpt_distribution(p), ages, req, cfg, jobs);
}

}  // namespace resvar
