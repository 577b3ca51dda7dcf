#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "resvar/distributions.hpp"
#include "resvar/errors.hpp"
#include "resvar/phm.hpp"
#include "resvar/residual.hpp"

using namespace resvar;

namespace {
Distribution dist(const char* spec) { return make_distribution(parse_family(spec)); }
}  // namespace

TEST(PHM, ExponentialClosure) {
  const Distribution d = phm_distribution(make_phm(dist("exponential(lambda=1.5)"), 3.0));
  const Distribution ref = dist("exponential(lambda=4.5)");
  for (double x : {0.0, 0.2, 1.0, 3.0}) {
    EXPECT_NEAR(d.pdf(x), ref.pdf(x), 1e-13);
    EXPECT_NEAR(d.survival(x), ref.survival(x), 1e-15);
    EXPECT_NEAR(d.hazard(x), 4.5, 1e-13);
  }
  EXPECT_NEAR(d.quantile(0.5), ref.quantile(0.5), 1e-12);
}

TEST(PHM, SurvivalIsPower) {
  const Distribution base = dist("genexp(lambda=1,b=2)");
  const Distribution d = phm_distribution(make_phm(base, 2.0));
  for (double t : {0.1, 0.5, 1.0, 4.0}) {
    const double s = 1.0 - std::pow(1.0 - std::exp(-t), 2.0);
    EXPECT_NEAR(d.survival(t), s * s, 1e-15);
  }
  // Baseline with S(1) = 1/2 and a = 3 gives 1/8.
  const Distribution half = dist("exponential(lambda=0.6931471805599453)");
  EXPECT_NEAR(phm_distribution(make_phm(half, 3.0)).survival(1.0), 0.125, 1e-15);
}

TEST(Ell, Examples) {
  EXPECT_NEAR(ell(make_phm(dist("exponential(lambda=1)"), 1.0), std::exp(-2.0)), -2.0, 1e-13);
  EXPECT_NEAR(ell(make_phm(dist("exponential(lambda=1)"), 2.0), 0.25), std::log(0.5), 1e-13);
  EXPECT_THROW(ell(make_phm(dist("exponential(lambda=1)"), 2.0), 0.0), DomainError);
  EXPECT_THROW(ell(make_phm(dist("exponential(lambda=1)"), 2.0), 1.0), DomainError);
}

TEST(Ell, FormsAgreeAcrossBaselines) {
  for (const char* spec : {"genexp(lambda=1,b=2)", "weibull(lambda=1,k=1.5)", "gamma(r=2,theta=0.5)",
                           "lognormal(mu=-0.5,sigma=1)"}) {
    const PHModel m = make_phm(dist(spec), 3.0);
    EXPECT_NEAR(ell(m, 0.3), ell_hazard_form(m, 0.3), 1e-9) << spec;
  }
}

// Substituting the generalized exponential quantile into l(y; a) gives
// log{a b lambda y^{1-1/a} w^{1-1/b} [1 - w^{1/b}]} with w = 1 - y^{1/a}.
TEST(Ell, GeneralizedExponentialClosedForm) {
  const double lambda = 0.9, b = 2.0;
  for (double a : {1.0, 2.0, 3.0, 4.0}) {
    const PHModel m = make_phm(make_distribution(GeneralizedExponential{lambda, b}), a);
    for (double y : {0.05, 0.3, 0.6, 0.95}) {
      const double w = 1.0 - std::pow(y, 1.0 / a);
      const double expected = std::log(a * b * lambda * std::pow(y, 1.0 - 1.0 / a) *
                                       std::pow(w, 1.0 - 1.0 / b) * (1.0 - std::pow(w, 1.0 / b)));
      EXPECT_NEAR(ell(m, y), expected, 1e-12) << "a=" << a << " y=" << y;
    }
  }
}

TEST(PHMResidual, DegenerateExponentMatchesBaseline) {
  const Distribution base = dist("weibull(lambda=1,k=1.5)");
  const PHMResidual r = phm_residual_information(make_phm(base, 1.0), 0.8);
  EXPECT_NEAR(r.entropy, residual_entropy(base, 0.8), 1e-9);
  EXPECT_NEAR(r.varentropy, residual_varentropy(base, 0.8), 1e-9);
}

TEST(PHMResidual, ExponentialClosure) {
  for (double a : {0.5, 2.0, 4.0}) {
    const PHMResidual r = phm_residual_information(make_phm(dist("exponential(lambda=2)"), a), 0.4);
    EXPECT_NEAR(r.entropy, 1.0 - std::log(2.0 * a), 1e-9);
    EXPECT_NEAR(r.varentropy, 1.0, 1e-9);
  }
}

TEST(PHMResidual, TwoPathsAgree) {
  for (const char* spec : {"genexp(lambda=1,b=2)", "gamma(r=2,theta=0.5)", "lognormal(mu=-0.5,sigma=1)"}) {
    for (double a : {0.5, 3.0}) {
      const PHModel m = make_phm(dist(spec), a);
      for (double t : {0.0, 0.5, 2.0}) {
        const PHMResidual l = phm_residual_information(m, t);
        const ResidualInformation g = residual_information(phm_distribution(m), t);
        EXPECT_NEAR(l.entropy, g.entropy, 1e-7) << spec << " a=" << a << " t=" << t;
        EXPECT_NEAR(l.varentropy, g.varentropy, 1e-7) << spec << " a=" << a << " t=" << t;
      }
    }
  }
}

TEST(PHMResidual, DomainGuard) {
  EXPECT_THROW(phm_residual_information(make_phm(dist("weibull(lambda=1,k=2)"), 4.0), 3.0), DomainError);
}

TEST(Series, Construction) {
  const Distribution unit = dist("exponential(lambda=1.5)");
  const PHModel one = series_system(1, unit);
  EXPECT_EQ(one.a, 1.0);
  const Distribution two = phm_distribution(series_system(2, unit));
  EXPECT_NEAR(two.pdf(0.4), dist("exponential(lambda=3)").pdf(0.4), 1e-14);
  EXPECT_THROW(series_system(0, unit), DomainError);
  EXPECT_THROW(make_phm(unit, 0.0), ParameterError);
}

TEST(Series, VarentropyIncreasesWithUnitsAtLaterAges) {
  const Distribution unit = dist("genexp(lambda=1,b=2)");
  for (double t : {1.5, 2.0, 3.0}) {
    double prev = -1.0;
    for (int n = 1; n <= 4; ++n) {
      const double v = phm_residual_varentropy(series_system(n, unit), t);
      EXPECT_GT(v, prev) << "t=" << t << " n=" << n;
      prev = v;
    }
  }
}

TEST(Series, OrderingReversesNearZeroForShapeAboveOne) {
  const Distribution unit = dist("genexp(lambda=1,b=2)");
  EXPECT_LT(phm_residual_varentropy(series_system(2, unit), 0.0),
            phm_residual_varentropy(series_system(1, unit), 0.0));
}

TEST(ReferenceInterval, Examples) {
  const ReferenceInterval e = reference_interval(make_phm(dist("exponential(lambda=1)"), 1.0), 2.0, 2.0);
  EXPECT_NEAR(e.low, -1.0, 1e-8);
  EXPECT_NEAR(e.high, 3.0, 1e-8);
  const ReferenceInterval g = reference_interval(make_phm(dist("gamma(r=2,theta=0.5)"), 2.0), 0.5, 3.0);
  EXPECT_LT(g.low, g.entropy);
  EXPECT_GT(g.high, g.entropy);
  EXPECT_NEAR(g.high - g.low, 6.0 * std::sqrt(g.varentropy), 1e-12);
  const ReferenceInterval l = reference_interval(make_phm(dist("lognormal(mu=-0.5,sigma=1)"), 4.0), 1.0, 2.0);
  EXPECT_LT(l.low, l.high);
  EXPECT_THROW(reference_interval(make_phm(dist("exponential(lambda=1)"), 1.0), 0.0, -1.0), ParameterError);
}

TEST(ReferenceInterval, BaselineMeans) {
  const auto two_over_pi = reference_interval_baselines(WeibullScale::TwoOverPi);
  const auto unit = reference_interval_baselines(WeibullScale::UnitMean);
  ASSERT_EQ(two_over_pi.size(), 3u);
  EXPECT_NEAR(lifetime_mean(make_distribution(two_over_pi[0].family)), 1.0 / std::sqrt(std::numbers::pi), 1e-9);
  for (const auto& f : unit) EXPECT_NEAR(lifetime_mean(make_distribution(f.family)), 1.0, 1e-9) << f.label;
}
