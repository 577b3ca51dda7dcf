#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "resvar/resvar.hpp"

using namespace resvar;

namespace {

// Random members of every family, seeded for reproducibility.
std::vector<ParametricFamily> sample_families(std::mt19937& rng, int per_family) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  std::vector<ParametricFamily> out;
  for (int i = 0; i < per_family; ++i) {
    out.push_back(Uniform{in(0.5, 4.0)});
    out.push_back(Exponential{in(0.2, 5.0)});
    out.push_back(Triangular{});
    out.push_back(Weibull{in(0.5, 2.0), in(0.4, 4.0)});
    out.push_back(Gamma{in(0.5, 5.0), in(0.2, 2.0)});
    out.push_back(Lognormal{in(-1.0, 1.0), in(0.3, 1.5)});
    out.push_back(GeneralizedPareto{in(-0.45, 2.0), in(0.2, 3.0)});
    out.push_back(ModifiedPareto{in(0.2, 4.0)});
    out.push_back(GeneralizedExponential{in(0.3, 3.0), in(0.3, 5.0)});
  }
  return out;
}

std::vector<double> ages_for(const Distribution& d, int n) {
  // Ages between the 0 and 0.99 survival quantiles of the support.
  std::vector<double> ages;
  for (int i = 0; i < n; ++i) ages.push_back(d.inverse_survival(1.0 - 0.99 * i / (n - 1)));
  ages.front() = std::max(0.0, d.support_low());
  return ages;
}

}  // namespace

TEST(Property, CumulativeHazardIsMinusLogSurvival) {
  std::mt19937 rng(20240601);
  for (const auto& fam : sample_families(rng, 4)) {
    const Distribution d = make_distribution(fam);
    for (double t : ages_for(d, 12)) {
      const double s = d.survival(t);
      if (s <= 1e-10) continue;
      EXPECT_NEAR(d.cumulative_hazard(t), -std::log(s), 1e-9) << to_string(fam) << " t=" << t;
    }
  }
}

TEST(Property, QuantileInvertsCdf) {
  std::mt19937 rng(7);
  for (const auto& fam : sample_families(rng, 4)) {
    const Distribution d = make_distribution(fam);
    for (double u : {1e-4, 0.05, 0.3, 0.5, 0.7, 0.95, 0.999}) {
      const double x = d.quantile(u);
      // Near a finite endpoint one ulp of x can move the cdf by far more than 1e-12.
      const double slack = 4.0 * d.pdf(x) * std::abs(x) * std::numeric_limits<double>::epsilon();
      EXPECT_NEAR(d.cdf(x), u, 1e-12 + slack) << to_string(fam);
      EXPECT_NEAR(d.quantile(d.cdf(x)), x, 1e-8 * std::max(1.0, std::abs(x))) << to_string(fam);
    }
  }
}

TEST(Property, HazardTimesSurvivalIsDensity) {
  std::mt19937 rng(99);
  for (const auto& fam : sample_families(rng, 4)) {
    const Distribution d = make_distribution(fam);
    for (double t : ages_for(d, 10)) {
      const double f = d.pdf(t);
      if (!(f > 0.0) || !std::isfinite(f)) continue;
      EXPECT_NEAR(d.hazard(t) * d.survival(t) / f, 1.0, 1e-10) << to_string(fam) << " t=" << t;
    }
  }
}

TEST(Property, ResidualVarentropyNonNegativeAndFormsAgree) {
  std::mt19937 rng(3);
  for (const auto& fam : sample_families(rng, 2)) {
    const Distribution d = make_distribution(fam);
    for (double t : ages_for(d, 5)) {
      if (d.survival(t) < 1e-6) continue;
      SCOPED_TRACE(to_string(fam) + " t=" + format_number(t));
      const ResidualInformation r = residual_information(d, t);
      EXPECT_GE(r.varentropy, -1e-9) << to_string(fam) << " t=" << t;
      EXPECT_NEAR(r.entropy, r.entropy_hazard_form, 1e-6 * (1.0 + std::abs(r.entropy)))
          << to_string(fam) << " t=" << t;
    }
  }
}

TEST(Property, BoundsHoldWheneverHypothesesDo) {
  const char* specs[] = {"exponential(lambda=0.7)", "weibull(lambda=1,k=0.5)", "weibull(lambda=1,k=2)",
                         "weibull(lambda=1,k=3.5)", "gamma(r=2,theta=0.5)", "gamma(r=0.7,theta=1)",
                         "lognormal(mu=-0.5,sigma=1)", "genpareto(a=-1/3,b=1/3)", "uniform(theta=1)",
                         "triangular()", "genexp(lambda=1,b=2)", "modpareto(lambda=1)"};
  int cp_checked = 0;
  for (const char* spec : specs) {
    const Distribution d = make_distribution(parse_family(spec));
    for (double t : ages_for(d, 10)) {
      if (d.survival(t) < 1e-6) continue;
      SCOPED_TRACE(std::string(spec) + " t=" + format_number(t));
      const BoundReport cp = cp_lower_bound(d, t);
      if (cp.hypothesis_ok) {
        ++cp_checked;
        EXPECT_LE(cp.bound_value, cp.measured_v + 1e-6) << spec << " t=" << t;
      }
      const BoundReport lc = logconcave_upper_bound(d, t);
      if (lc.hypothesis_ok) EXPECT_GE(lc.bound_value, lc.measured_v - 1e-6) << spec << " t=" << t;
      const BoundReport w = weighted_upper_bound(d, t, 0.7, -std::log(0.7));
      if (w.hypothesis_ok) EXPECT_GE(w.bound_value, w.measured_v - 1e-6) << spec << " t=" << t;
    }
  }
  EXPECT_GT(cp_checked, 60);
}

TEST(Property, EllFormsAgreeOnGrid) {
  const Distribution base = make_distribution(GeneralizedExponential{1.0, 2.0});
  for (double a = 0.25; a <= 5.0; a += 0.25) {
    const PHModel m = make_phm(base, a);
    for (double y = 0.02; y < 1.0; y += 0.04) {
      EXPECT_NEAR(ell(m, y), ell_hazard_form(m, y), 1e-9) << "a=" << a << " y=" << y;
    }
  }
}

TEST(Property, PhmTwoPathsOnRandomExponents) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ua(0.3, 4.0);
  std::uniform_real_distribution<double> ut(0.0, 1.5);
  const Distribution base = make_distribution(Weibull{1.0, 1.5});
  for (int i = 0; i < 8; ++i) {
    const PHModel m = make_phm(base, ua(rng));
    const double t = ut(rng);
    const PHMResidual l = phm_residual_information(m, t);
    const ResidualInformation g = residual_information(phm_distribution(m), t);
    EXPECT_NEAR(l.entropy, g.entropy, 1e-7);
    EXPECT_NEAR(l.varentropy, g.varentropy, 1e-7);
  }
}

TEST(Property, ExponentialCPEqualityAcrossAges) {
  const Distribution d = make_distribution(Exponential{1.3});
  for (double t = 0.0; t <= 10.0; t += 0.5) {
    EXPECT_NEAR(cp_lower_bound(d, t).bound_value, residual_varentropy(d, t), 1e-6) << t;
  }
}
