#include <algorithm>
#include <cmath>
#include <sstream>

#include "resvar/distributions.hpp"
#include "resvar/errors.hpp"
#include "resvar/quadrature.hpp"

namespace resvar {
namespace {

constexpr double kTinyPdf = 1e-300;
constexpr double kLogTinyPdf = -690.77552789821368;  // log(1e-300)

void push_increasing(std::vector<double>& pts, double x) {
  if (std::isfinite(x) && (pts.empty() || x > pts.back())) pts.push_back(x);
}

}  // namespace

std::vector<double> probability_breakpoints(const Distribution& d, double t) {
  const double lo = d.support_low();
  const double hi = d.support_high();
  const double start = std::max(t, lo);
  std::vector<double> pts;

  double s0 = 1.0;
  if (std::isinf(start)) {
    pts.push_back(-kInf);
    for (double p : {1e-12, 1e-6, 1e-2, 0.1}) push_increasing(pts, d.quantile(p));
  } else {
    pts.push_back(start);
    s0 = d.survival(start);
  }
  if (s0 > 0.0) {
    for (double r : {0.5, 0.1, 1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) {
      const double s = s0 * r;
      if (s < 1e-300) break;
      const double x = d.inverse_survival(s);
      if (x >= hi) break;
      push_increasing(pts, x);
    }
  }
  if (hi > pts.back()) pts.push_back(hi);
  return pts;
}

QuadResult conditional_expectation(const Distribution& d, double t, const DensityIntegrand& g,
                                   const QuadConfig& cfg) {
  const double s = d.survival(t);
  if (!(s > 0.0)) {
    std::ostringstream msg;
    msg << "age t = " << t << " outside the support: survival is " << s;
    throw DomainError(msg.str());
  }
  const double log_s = t <= d.support_low() ? 0.0 : -d.cumulative_hazard(t);
  auto integrand = [&](double x) -> double {
    const double lf = d.log_pdf(x);
    if (!(lf >= kLogTinyPdf)) return 0.0;
    return g(x, lf) * std::exp(lf - log_s);
  };
  const std::vector<double> pts = probability_breakpoints(d, t);
  return integrate(integrand, std::span<const double>(pts), cfg);
}

QuadResult integrate_by_survival_substitution(const RealFunction& h, const Distribution& d,
                                              double t, const QuadConfig& cfg) {
  const double s = d.survival(t);
  if (!(s > 0.0)) {
    std::ostringstream msg;
    msg << "age t = " << t << " outside the support: survival is " << s;
    throw DomainError(msg.str());
  }
  QuadConfig scaled = cfg;
  scaled.abs_tol = cfg.abs_tol * s;
  auto integrand = [&](double u) { return h(d.inverse_survival(u)); };
  std::vector<double> pts{0.0};
  for (double r : {1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.5}) push_increasing(pts, s * r);
  push_increasing(pts, s);
  return integrate(integrand, std::span<const double>(pts), scaled);
}

}  // namespace resvar
