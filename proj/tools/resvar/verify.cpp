#include "resvar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include <resvar/resvar.hpp>

namespace resvar::app {
namespace {

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

class Suite {
 public:
  Suite(VerifyReport& report, std::string name) : report_(report), name_(std::move(name)) {}

  // Passes when err <= tol.
  void close(const std::string& label, double err, double tol) {
    report_.add({name_, label, err, tol, err <= tol, {}});
  }
  // Passes when margin > 0; margin is the smallest gap in an ordering.
  void positive(const std::string& label, double margin) {
    report_.add({name_, label, margin, 0.0, margin > 0.0, {}});
  }
  void truth(const std::string& label, bool ok) {
    report_.add({name_, label, ok ? 1.0 : 0.0, 1.0, ok, {}});
  }
  // Runs body; an exception becomes a failed check carrying its message.
  void guard(const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report_.add({name_, label, std::nan(""), 0.0, false, e.what()});
    }
  }

 private:
  VerifyReport& report_;
  std::string name_;
};

Distribution dist(const std::string& spec) { return make_distribution(parse_family(spec)); }

QuadConfig tight() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 4000;
  return cfg;
}

void suite_table1(VerifyReport& report) {
  Suite s(report, "table1");
  for (double t : {0.0, 0.2, 0.5}) {
    const std::string at = fmt(" t=%g", t);
    s.guard("uniform" + at, [&] {
      const auto r = residual_information(dist("uniform(theta=1)"), t);
      s.close("uniform(theta=1)" + at + " V", std::abs(r.varentropy), 1e-6);
      s.close("uniform(theta=1)" + at + " H", std::abs(r.entropy - std::log(1.0 - t)), 1e-6);
    });
    for (double lambda : {0.5, 2.0}) {
      s.guard("exponential" + at, [&] {
        const auto r = residual_information(dist("exponential(lambda=" + fmt("%g", lambda) + ")"), t);
        const std::string name = fmt("exponential(lambda=%g)", lambda) + at;
        s.close(name + " V", std::abs(r.varentropy - 1.0), 1e-6);
        s.close(name + " H", std::abs(r.entropy - (1.0 - std::log(lambda))), 1e-6);
      });
    }
    s.guard("triangular" + at, [&] {
      const auto r = residual_information(dist("triangular()"), t);
      s.close("triangular()" + at + " V", std::abs(r.varentropy - 0.25), 1e-6);
      s.close("triangular()" + at + " H",
              std::abs(r.entropy - (0.5 + std::log((1.0 - t) / 2.0))), 1e-6);
    });
  }
  for (double lambda : {1.0, 3.0}) {
    for (double t : {0.0, 1.0, 10.0}) {
      const std::string name = fmt("modpareto(lambda=%g)", lambda) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const auto r = residual_information(dist(fmt("modpareto(lambda=%g)", lambda)), t);
        s.close(name + " V", std::abs(r.varentropy - 4.0), 1e-5);
        s.close(name + " H", std::abs(r.entropy - (2.0 - std::log(lambda / (1.0 + lambda * t)))),
                1e-6);
      });
    }
  }
  s.guard("discrete", [&] {
    const auto tp = DiscreteDistribution::three_point(0.1, 0.1);
    s.close("three-point(p=0.1,q=0.1) H", std::abs(discrete_entropy(tp) - 0.639032), 1e-4);
    s.close("three-point(p=0.1,q=0.1) V", std::abs(discrete_varentropy(tp) - 0.691852), 1e-4);
    const auto b = DiscreteDistribution::bernoulli(0.337009);
    s.close("bernoulli(theta=0.337009) H", std::abs(discrete_entropy(b) - 0.639032), 1e-4);
    s.close("bernoulli(theta=0.337009) V", std::abs(discrete_varentropy(b) - 0.1023), 1e-3);
    const ThreePointReport rep = discrete_varentropy_zeros_and_max();
    for (const auto& z : rep.zeros) {
      s.close(fmt("three-point zero (%.6f,", z.p) + fmt(" %.6f) V", z.q), std::abs(z.varentropy),
              1e-12);
    }
    const SimplexPoint& m = rep.maximizers[0];
    s.close("three-point maximizer p", std::abs(m.p - 0.06165), 5e-4);
    s.close("three-point maximizer q", std::abs(m.q - 0.06165), 5e-4);
  });
}

void suite_identities(VerifyReport& report) {
  Suite s(report, "identities");
  const QuadConfig cfg = tight();
  const char* families[] = {"weibull(lambda=1,k=0.5)", "weibull(lambda=1,k=1.5)",
                            "weibull(lambda=1,k=3.5)", "gamma(r=2,theta=0.5)",
                            "lognormal(mu=-0.5,sigma=1)"};
  for (const char* spec : families) {
    const Distribution d = dist(spec);
    for (double t : {0.25, 0.5, 1.0, 1.5}) {
      const std::string name = std::string(spec) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const double h = 1e-3 * std::max(1.0, t);
        const double dh = differentiate([&](double u) { return residual_entropy(d, u, cfg); }, t, h).value;
        const double dh_id = residual_entropy_derivative(d, t, cfg);
        s.close(name + " dH/dt", std::abs(dh - dh_id), std::max(1e-4, 1e-3 * std::abs(dh_id)));
        const double dv = differentiate([&](double u) { return residual_varentropy(d, u, cfg); }, t, h).value;
        const double dv_id = residual_varentropy_derivative(d, t, cfg);
        s.close(name + " dV/dt", std::abs(dv - dv_id), std::max(1e-4, 1e-3 * std::abs(dv_id)));
      });
    }
  }
  const char* constant[] = {"genpareto(a=1,b=1)", "genpareto(a=-1/3,b=1/3)",
                            "exponential(lambda=1)", "modpareto(lambda=1)"};
  for (const char* spec : constant) {
    s.guard(spec, [&] {
      const Distribution d = dist(spec);
      const double hi = std::isfinite(d.support_high()) ? 0.9 * d.support_high() : 5.0;
      const ConstancyReport r = constancy_characterization(d, linear_grid(0.0, hi, 10));
      s.close(std::string(spec) + " spread of H+log(hazard)", r.spread, 1e-6);
      s.close(std::string(spec) + " generalized hazard", r.generalized_hazard_max_error, 1e-6);
      s.close(std::string(spec) + " varentropy relation", r.varentropy_max_error, 1e-6);
    });
  }
}

void suite_bounds(VerifyReport& report) {
  Suite s(report, "bounds");
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double t : {0.0, 1.0, 3.0}) {
      const std::string name = fmt("exponential(lambda=%g)", lambda) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const BoundReport b = cp_lower_bound(dist(fmt("exponential(lambda=%g)", lambda)), t);
        s.truth(name + " cp hypothesis", b.hypothesis_ok);
        s.close(name + " cp equality", std::abs(b.bound_value - b.measured_v), 1e-6);
      });
    }
  }
  const char* logconcave[] = {"exponential(lambda=1)",   "weibull(lambda=1,k=1)",
                              "weibull(lambda=1,k=2)",   "weibull(lambda=1,k=3.5)",
                              "gamma(r=2,theta=0.5)",    "uniform(theta=1)",
                              "triangular()"};
  for (const char* spec : logconcave) {
    const Distribution d = dist(spec);
    const double hi = std::isfinite(d.support_high()) ? 0.8 * d.support_high() : 1.5;
    for (double t : linear_grid(0.0, hi, 4)) {
      const std::string name = std::string(spec) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const BoundReport b = logconcave_upper_bound(d, t);
        s.truth(name + " log-concave", b.hypothesis_ok);
        s.close(name + " V <= 1", std::max(0.0, b.measured_v - 1.0), 1e-6);
      });
    }
  }
  const char* cp_families[] = {"weibull(lambda=1,k=2)", "gamma(r=2,theta=0.5)",
                               "lognormal(mu=-0.5,sigma=1)", "weibull(lambda=1,k=0.5)"};
  for (const char* spec : cp_families) {
    const Distribution d = dist(spec);
    for (double t : {0.0, 0.5, 1.5}) {
      const std::string name = std::string(spec) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const BoundReport b = cp_lower_bound(d, t);
        if (!b.hypothesis_ok) return;
        s.close(name + " cp <= V", std::max(0.0, b.bound_value - b.measured_v), 1e-6);
      });
    }
  }
  for (double lambda : {0.25, 0.5, 1.0}) {
    for (double t : {0.0, 1.0, 2.0}) {
      const std::string name = fmt("exponential(lambda=%g)", lambda) + fmt(" t=%g", t);
      s.guard(name, [&] {
        const BoundReport b = weighted_upper_bound(dist(fmt("exponential(lambda=%g)", lambda)), t,
                                                   lambda, -std::log(lambda));
        s.truth(name + " weighted hypothesis", b.hypothesis_ok);
        s.close(name + " weighted >= V", std::max(0.0, b.measured_v - b.bound_value), 1e-6);
      });
    }
  }
  s.guard("triangular weighted", [&] {
    const BoundReport b = weighted_upper_bound(dist("triangular()"), 0.0, 2.0, std::log(2.0));
    s.truth("triangular() alpha=2 beta=log2 hypothesis rejected", !b.hypothesis_ok);
  });
}

void suite_transforms(VerifyReport& report) {
  Suite s(report, "transforms");
  for (const char* spec : {"exponential(lambda=1)", "weibull(lambda=1,k=1.5)"}) {
    const Distribution d = dist(spec);
    for (double a : {0.5, 2.0}) {
      for (double b : {0.0, 2.0}) {
        for (double u : {0.0, 0.5, 1.0, 1.5, 2.0}) {
          const double t = a * u + b;
          const std::string name = std::string(spec) + fmt(" a=%g b=", a) + fmt("%g t=%g", b, t);
          s.guard(name, [&] {
            const LinearTransformReport r = linear_transform_check(d, a, b, t);
            s.close(name + " H", r.entropy_error, 1e-6);
            s.close(name + " V", r.varentropy_error, 1e-6);
          });
        }
      }
    }
  }
}

void suite_phm(VerifyReport& report) {
  Suite s(report, "phm");
  for (const char* spec : {"genexp(lambda=1,b=2)", "weibull(lambda=1,k=1.5)"}) {
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
      const PHModel m = make_phm(dist(spec), a);
      double worst = 0.0;
      s.guard(std::string(spec) + " l forms", [&] {
        for (double y : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          worst = std::max(worst, std::abs(ell(m, y) - ell_hazard_form(m, y)));
        }
        s.close(std::string(spec) + fmt(" a=%g l forms agree", a), worst, 1e-9);
      });
    }
  }
  for (const char* spec : {"genexp(lambda=1,b=2)", "weibull(lambda=1,k=1.5)", "gamma(r=2,theta=0.5)"}) {
    for (double a : {0.5, 2.0, 3.0}) {
      const PHModel m = make_phm(dist(spec), a);
      const Distribution pd = phm_distribution(m);
      for (double t : {0.5, 1.0, 2.0}) {
        const std::string name = std::string(spec) + fmt(" a=%g t=", a) + fmt("%g", t);
        s.guard(name, [&] {
          const PHMResidual l = phm_residual_information(m, t);
          const ResidualInformation g = residual_information(pd, t);
          s.close(name + " H two paths", std::abs(l.entropy - g.entropy), 1e-6);
          s.close(name + " V two paths", std::abs(l.varentropy - g.varentropy), 1e-6);
        });
      }
    }
  }
  s.guard("exponential closure", [&] {
    const PHMResidual r = phm_residual_information(make_phm(dist("exponential(lambda=1)"), 2.0), 1.0);
    s.close("exponential(lambda=1) a=2 H", std::abs(r.entropy - (1.0 - std::log(2.0))), 1e-6);
    s.close("exponential(lambda=1) a=2 V", std::abs(r.varentropy - 1.0), 1e-6);
  });
  // For b > 1 the ordering in n only settles once t is past the bulk; at
  // small ages V decreases in n.
  for (const char* spec : {"genexp(lambda=1,b=2)", "genexp(lambda=0.9,b=2)"}) {
    for (double t : {1.5, 2.0, 2.5, 3.0, 4.0}) {
      const std::string name = std::string(spec) + fmt(" t=%g", t);
      s.guard(name, [&] {
        double margin = kInf;
        double prev = -kInf;
        for (int n = 1; n <= 4; ++n) {
          const double v = phm_residual_varentropy(series_system(n, dist(spec)), t);
          margin = std::min(margin, v - prev);
          prev = v;
        }
        s.positive(name + " V increasing in n=1..4", margin);
      });
    }
  }
}

void suite_oufpt(VerifyReport& report, int jobs) {
  Suite s(report, "oufpt");
  for (double xi : {0.0, 0.35, 0.7, 1.0}) {
    const OUFPTParams p{1.0, 1.0, 1.0, xi};
    s.close(fmt("xi=%g f(0) == xi", xi), std::abs(ou_fpt_pdf(p, 0.0) - xi), 0.0);
  }
  for (double xi : {0.0, 0.35, 1.0}) {
    const OUFPTParams p{1.0, 1.0, 1.0, xi};
    s.guard(fmt("xi=%g mass", xi), [&] {
      const Distribution d = ou_fpt_distribution(p);
      s.close(fmt("xi=%g total mass", xi), std::abs(d.as<NumericDensity>()->mass() - 1.0), 1e-4);
      double worst = 0.0;
      for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        worst = std::max(worst, std::abs(d.survival(t) - ou_fpt_survival(p, t)));
      }
      s.close(fmt("xi=%g survival vs closed form", xi), worst, 1e-8);
    });
  }
  const std::vector<double> ages = linear_grid(0.5, 5.0, 10);
  for (double nu : {1.0, 2.0}) {
    s.guard(fmt("nu=%g orderings", nu), [&] {
      std::vector<MeasureCurve> curves;
      for (double xi : {0.0, 0.35, 0.7, 1.0}) {
        curves.push_back(ou_fpt_residual_measures({1.0, 1.0, nu, xi}, ages, {}, jobs));
      }
      double h_margin = kInf;
      double v_margin = kInf;
      for (std::size_t i = 0; i < ages.size(); ++i) {
        for (std::size_t k = 1; k < curves.size(); ++k) {
          h_margin = std::min(h_margin, curves[k - 1].values[i][0] - curves[k].values[i][0]);
          if (k >= 2) {
            v_margin = std::min(v_margin, curves[k - 1].values[i][1] - curves[k].values[i][1]);
          }
        }
      }
      s.positive(fmt("nu=%g H decreasing in xi", nu), h_margin);
      s.positive(fmt("nu=%g V decreasing in xi (xi >= 0.35)", nu), v_margin);
    });
  }
  s.guard("varentropy limit", [&] {
    double lo = kInf;
    double hi = -kInf;
    for (double nu : {0.15, 0.3, 0.45, 0.6}) {
      const MeasureCurve c = ou_fpt_residual_measures({1.0, 1.0, nu, 1.0}, {ages.back()});
      lo = std::min(lo, c.values[0][1]);
      hi = std::max(hi, c.values[0][1]);
    }
    s.close(fmt("xi=1 V spread over nu at t=%g", ages.back()), hi - lo, 0.05);
  });
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.pass; });
}

void VerifyReport::write(std::ostream& out) const {
  std::size_t failed = 0;
  for (const auto& r : results_) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.label;
    if (!r.error.empty()) {
      out << "  error: " << r.error << '\n';
    } else {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "  value=%.3e limit=%.3e", r.value, r.limit);
      out << buf << '\n';
    }
    if (!r.pass) ++failed;
  }
  out << results_.size() - failed << " passed, " << failed << " failed\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"table1",     "identities", "bounds",
                                                 "transforms", "phm",        "oufpt"};
  return names;
}

VerifyReport run_verify(const std::string& suite, int jobs) {
  if (suite != "all" &&
      std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw SpecParseError("unknown verify suite '" + suite + "'");
  }
  VerifyReport report;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("table1")) suite_table1(report);
  if (want("identities")) suite_identities(report);
  if (want("bounds")) suite_bounds(report);
  if (want("transforms")) suite_transforms(report);
  if (want("phm")) suite_phm(report);
  if (want("oufpt")) suite_oufpt(report, jobs);
  return report;
}

}  // namespace resvar::app
