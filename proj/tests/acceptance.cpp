// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "resvar/resvar.hpp"

using namespace resvar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void need(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

Distribution dist(const std::string& spec) { return make_distribution(parse_family(spec)); }

Outcome constant_families() {
  Outcome o;
  double worst = 0.0;
  for (double frac : {0.0, 0.2, 0.5}) {
    const auto u = residual_information(dist("uniform(theta=2)"), 2.0 * frac);
    worst = std::max({worst, std::abs(u.varentropy), std::abs(u.entropy - std::log(2.0 - 2.0 * frac))});
    const auto e = residual_information(dist("exponential(lambda=1.5)"), frac);
    worst = std::max({worst, std::abs(e.varentropy - 1.0), std::abs(e.entropy - (1.0 - std::log(1.5)))});
    const auto t = residual_information(dist("triangular()"), frac);
    worst = std::max({worst, std::abs(t.varentropy - 0.25),
                      std::abs(t.entropy - (0.5 + std::log((1.0 - frac) / 2.0)))});
  }
  o.need(worst <= 1e-6, "max error " + num(worst));
  o.detail = o.pass ? "max error " + num(worst) : o.detail;
  return o;
}

Outcome modified_pareto() {
  Outcome o;
  double wv = 0.0, wh = 0.0;
  for (double lambda : {1.0, 3.0}) {
    for (double t : {0.0, 1.0, 10.0}) {
      const auto r = residual_information(make_distribution(ModifiedPareto{lambda}), t);
      wv = std::max(wv, std::abs(r.varentropy - 4.0));
      wh = std::max(wh, std::abs(r.entropy - (2.0 - std::log(lambda / (1.0 + lambda * t)))));
    }
  }
  o.need(wv <= 1e-5 && wh <= 1e-6, "V err " + num(wv) + ", H err " + num(wh));
  if (o.pass) o.detail = "V err " + num(wv) + ", H err " + num(wh);
  return o;
}

Outcome discrete_examples() {
  Outcome o;
  const auto tp = DiscreteDistribution::three_point(0.1, 0.1);
  const auto b = DiscreteDistribution::bernoulli(0.337009);
  o.need(std::abs(discrete_entropy(tp) - 0.639032) <= 1e-4, "three-point H");
  o.need(std::abs(discrete_varentropy(tp) - 0.691852) <= 1e-4, "three-point V");
  o.need(std::abs(discrete_entropy(b) - 0.639032) <= 1e-4, "bernoulli H");
  o.need(std::abs(discrete_varentropy(b) - 0.1023) <= 1e-3, "bernoulli V");
  const ThreePointReport r = discrete_varentropy_zeros_and_max();
  double zmax = 0.0;
  for (const auto& z : r.zeros) zmax = std::max(zmax, std::abs(z.varentropy));
  o.need(r.zeros.size() == 7 && zmax <= 1e-12, "zeros max |V| " + num(zmax));
  const double dp = std::abs(r.maximizers[0].p - 0.06165), dq = std::abs(r.maximizers[0].q - 0.06165);
  o.need(dp <= 5e-4 && dq <= 5e-4, "maximizer off by " + num(std::max(dp, dq)));
  if (o.pass) o.detail = "zeros max |V| " + num(zmax) + ", maximizer off by " + num(std::max(dp, dq));
  return o;
}

Outcome derivative_identities() {
  Outcome o;
  QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 4000;
  double worst_ratio = 0.0;
  for (const char* spec : {"weibull(lambda=1,k=0.5)", "weibull(lambda=1,k=1.5)", "weibull(lambda=1,k=3.5)",
                           "gamma(r=2,theta=0.5)", "lognormal(mu=-0.5,sigma=1)"}) {
    const Distribution d = dist(spec);
    for (double t : linear_grid(0.15, 1.5, 10)) {
      const double h = 1e-3;
      const double dh = differentiate([&](double u) { return residual_entropy(d, u, cfg); }, t, h).value;
      const double dv = differentiate([&](double u) { return residual_varentropy(d, u, cfg); }, t, h).value;
      const double ih = residual_entropy_derivative(d, t, cfg);
      const double iv = residual_varentropy_derivative(d, t, cfg);
      const double rh = std::abs(dh - ih) / std::max(1e-4, 1e-3 * std::abs(ih));
      const double rv = std::abs(dv - iv) / std::max(1e-4, 1e-3 * std::abs(iv));
      worst_ratio = std::max({worst_ratio, rh, rv});
      o.need(rh <= 1.0 && rv <= 1.0, std::string(spec) + " at t=" + num(t));
    }
  }
  if (o.pass) o.detail = "worst error/tolerance " + num(worst_ratio);
  return o;
}

Outcome weibull_shapes() {
  Outcome o;
  const auto ages = linear_grid(0.05, 2.5, 50);
  int skipped = 0;
  auto diffs = [&](double k) {
    const Distribution d = make_distribution(Weibull{1.0, k});
    std::vector<double> v, out;
    for (double t : ages) {
      // Ages past the survival floor are outside the domain (k=3.5 near t=2.5).
      if (d.survival(t) < kMinResidualSurvival) {
        ++skipped;
        continue;
      }
      v.push_back(residual_varentropy(d, t));
    }
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i] - v[i - 1]);
    return out;
  };
  for (double x : diffs(0.5)) o.need(x < 0.0, "k=0.5 not decreasing");
  for (double x : diffs(1.0)) o.need(std::abs(x) <= 1e-6, "k=1 not constant");
  for (double x : diffs(1.5)) o.need(x > 0.0, "k=1.5 not increasing");
  const auto d = diffs(3.5);
  int changes = 0;
  for (std::size_t i = 1; i < d.size(); ++i) changes += (d[i] > 0) != (d[i - 1] > 0);
  o.need(changes >= 1, "k=3.5 monotone");
  if (o.pass) {
    o.detail = "k=3.5 sign changes " + std::to_string(changes) + ", ages past the survival floor " +
               std::to_string(skipped);
  }
  return o;
}

Outcome linear_transformation() {
  Outcome o;
  double wh = 0.0, wv = 0.0;
  for (const char* spec : {"exponential(lambda=1)", "weibull(lambda=1,k=1.5)"}) {
    for (double a : {0.5, 2.0}) {
      for (double b : {0.0, 2.0}) {
        for (double u : {0.0, 0.4, 0.8, 1.2, 1.6}) {
          const LinearTransformReport r = linear_transform_check(dist(spec), a, b, a * u + b);
          wh = std::max(wh, r.entropy_error);
          wv = std::max(wv, r.varentropy_error);
        }
      }
    }
  }
  o.need(wh <= 1e-6 && wv <= 1e-6, "H err " + num(wh) + ", V err " + num(wv));
  if (o.pass) o.detail = "H err " + num(wh) + ", V err " + num(wv);
  return o;
}

Outcome bounds() {
  Outcome o;
  double lc = 0.0, cp = 0.0, eq = 0.0, wb = 0.0;
  int weighted_ok = 0;
  for (const char* spec : {"exponential(lambda=1)", "weibull(lambda=1,k=1)", "weibull(lambda=1,k=2)",
                           "weibull(lambda=1,k=3.5)", "gamma(r=2,theta=0.5)", "uniform(theta=1)", "triangular()"}) {
    const Distribution d = dist(spec);
    const double hi = std::isfinite(d.support_high()) ? 0.9 * d.support_high() : 1.8;
    for (double t : linear_grid(0.0, hi, 10)) {
      const BoundReport b = logconcave_upper_bound(d, t);
      o.need(b.hypothesis_ok, std::string(spec) + " not flagged log-concave");
      lc = std::max(lc, b.measured_v - 1.0);
      const BoundReport c = cp_lower_bound(d, t);
      if (c.hypothesis_ok) cp = std::max(cp, c.bound_value - c.measured_v);
    }
  }
  for (const char* spec : {"lognormal(mu=-0.5,sigma=1)", "weibull(lambda=1,k=0.5)", "genexp(lambda=1,b=2)"}) {
    const Distribution d = dist(spec);
    for (double t : linear_grid(0.0, 2.0, 10)) {
      const BoundReport c = cp_lower_bound(d, t);
      if (c.hypothesis_ok) cp = std::max(cp, c.bound_value - c.measured_v);
    }
  }
  for (double lambda : {0.25, 0.5, 0.75, 1.0}) {
    const Distribution d = make_distribution(Exponential{lambda});
    for (double t : linear_grid(0.0, 4.0, 10)) {
      const BoundReport c = cp_lower_bound(d, t);
      eq = std::max(eq, std::abs(c.bound_value - c.measured_v));
      const BoundReport w = weighted_upper_bound(d, t, lambda, -std::log(lambda));
      if (w.hypothesis_ok) {
        ++weighted_ok;
        wb = std::max(wb, w.measured_v - w.bound_value);
      }
    }
  }
  o.need(lc <= 1e-6, "log-concave V exceeds 1 by " + num(lc));
  o.need(cp <= 1e-6, "cp bound exceeds V by " + num(cp));
  o.need(eq <= 1e-6, "exponential cp equality off by " + num(eq));
  o.need(weighted_ok == 40 && wb <= 1e-6, "weighted bound below V by " + num(wb));
  if (o.pass) {
    o.detail = "lc " + num(lc) + ", cp " + num(cp) + ", equality " + num(eq) + ", weighted " + num(wb);
  }
  return o;
}

Outcome constancy() {
  Outcome o;
  double spread = 0.0, gh = 0.0, vr = 0.0;
  for (const char* spec : {"genpareto(a=1,b=1)", "genpareto(a=-1/3,b=1/3)", "exponential(lambda=1)",
                           "modpareto(lambda=1)"}) {
    const Distribution d = dist(spec);
    const double hi = std::isfinite(d.support_high()) ? 0.9 * d.support_high() : 5.0;
    const ConstancyReport r = constancy_characterization(d, linear_grid(0.0, hi, 10));
    spread = std::max(spread, r.spread);
    gh = std::max(gh, r.generalized_hazard_max_error);
    vr = std::max(vr, r.varentropy_max_error);
  }
  o.need(spread <= 1e-6 && gh <= 1e-6 && vr <= 1e-6,
         "spread " + num(spread) + ", hazard " + num(gh) + ", V relation " + num(vr));
  if (o.pass) o.detail = "spread " + num(spread) + ", hazard " + num(gh) + ", V relation " + num(vr);
  return o;
}

Outcome phm() {
  Outcome o;
  double worst = 0.0;
  for (const char* spec : {"genexp(lambda=1,b=2)", "weibull(lambda=1,k=1.5)", "gamma(r=2,theta=0.5)"}) {
    for (double a : {0.5, 2.0, 3.0}) {
      const PHModel m = make_phm(dist(spec), a);
      for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const PHMResidual l = phm_residual_information(m, t);
        const ResidualInformation g = residual_information(phm_distribution(m), t);
        worst = std::max({worst, std::abs(l.entropy - g.entropy), std::abs(l.varentropy - g.varentropy)});
      }
    }
  }
  o.need(worst <= 1e-6, "two paths differ by " + num(worst));
  double margin = kInf;
  for (double t : {1.5, 2.0, 2.5, 3.0, 4.0}) {
    double prev = -kInf;
    for (int n = 1; n <= 4; ++n) {
      const double v = phm_residual_varentropy(series_system(n, dist("genexp(lambda=1,b=2)")), t);
      margin = std::min(margin, v - prev);
      prev = v;
    }
  }
  o.need(margin > 0.0, "series V not increasing in n, margin " + num(margin));
  if (o.pass) o.detail = "two paths " + num(worst) + ", smallest V step in n " + num(margin);
  return o;
}

Outcome ou_fpt() {
  Outcome o;
  for (double xi : {0.0, 0.35, 0.7, 1.0}) o.need(ou_fpt_pdf({1, 1, 1, xi}, 0.0) == xi, "f(0) != xi");
  double mass_err = 0.0;
  for (double xi : {0.0, 0.35, 1.0}) {
    const Distribution d = ou_fpt_distribution({1, 1, 1, xi});
    mass_err = std::max(mass_err, std::abs(d.as<NumericDensity>()->mass() - 1.0));
  }
  o.need(mass_err <= 1e-4, "mass off by " + num(mass_err));
  const auto ages = linear_grid(0.5, 5.0, 10);
  double h_margin = kInf, v_margin = kInf;
  for (double nu : {1.0, 2.0}) {
    std::vector<MeasureCurve> c;
    for (double xi : {0.0, 0.35, 0.7, 1.0}) c.push_back(ou_fpt_residual_measures({1, 1, nu, xi}, ages));
    for (std::size_t i = 0; i < ages.size(); ++i) {
      for (std::size_t k = 1; k < c.size(); ++k) {
        h_margin = std::min(h_margin, c[k - 1].values[i][0] - c[k].values[i][0]);
        if (k >= 2) v_margin = std::min(v_margin, c[k - 1].values[i][1] - c[k].values[i][1]);
      }
    }
  }
  o.need(h_margin > 0.0, "H not decreasing in xi, margin " + num(h_margin));
  o.need(v_margin > 0.0, "V not decreasing in xi, margin " + num(v_margin));
  double lo = kInf, hi = -kInf;
  for (double nu : {0.15, 0.3, 0.45, 0.6}) {
    const double v = ou_fpt_residual_measures({1, 1, nu, 1.0}, {ages.back()}).values[0][1];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  o.need(hi - lo <= 0.05, "V spread over nu " + num(hi - lo));
  if (o.pass) {
    o.detail = "mass " + num(mass_err) + ", H margin " + num(h_margin) + ", V margin " + num(v_margin) +
               ", V spread over nu " + num(hi - lo);
  }
  return o;
}

std::string capture(const std::string& args) {
  const std::string cmd = std::string(RESVAR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return out + "\nstatus " + std::to_string(status);
}

Outcome determinism() {
  Outcome o;
  const std::string verify = "verify all --jobs 4";
  o.need(capture(verify) == capture(verify), "verify all differs between runs");
  const std::string measure =
      "measure --dist \"lognormal(mu=-0.5,sigma=1)\" --grid 0:3:25 --measures H,V,m,sigma2,bound_cp,interval "
      "--with-errors";
  const std::string serial = capture(measure);
  o.need(serial == capture(measure), "measure differs between runs");
  o.need(serial == capture(measure + " --jobs 4"), "measure --jobs 4 differs from serial");
  o.need(capture(measure + " --jobs 4") == capture(measure + " --jobs 4"), "measure --jobs 4 differs between runs");
  const std::string ou = "ou-fpt --xi 0.35 --nu 2 --jobs 4";
  o.need(capture(ou) == capture(ou), "ou-fpt differs between runs");
  if (o.pass) o.detail = "byte-identical output";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "constant-varentropy families", 1.0, constant_families},
      {2, "modified pareto", 1.0, modified_pareto},
      {3, "discrete examples", 5.0, discrete_examples},
      {4, "derivative identities", 30.0, derivative_identities},
      {5, "weibull varentropy shapes", 0.0, weibull_shapes},
      {6, "linear transformation", 0.0, linear_transformation},
      {7, "bounds", 0.0, bounds},
      {8, "constancy characterization", 0.0, constancy},
      {9, "phm consistency and series ordering", 0.0, phm},
      {10, "ou first-passage time", 60.0, ou_fpt},
      {11, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0.0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s budget)";
    }
    std::printf("criterion %2d %-36s %s  %s  [%.2f s]\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
