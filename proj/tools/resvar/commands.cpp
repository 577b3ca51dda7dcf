#include "resvar/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <resvar/resvar.hpp>

#include "resvar/scenario.hpp"
#include "resvar/verify.hpp"

namespace resvar::app {
namespace {

struct Globals {
  std::string abs_tol;
  std::string rel_tol;
  std::string jobs;
  std::string output;
};

// Writes text to --output, or stdout when no path was given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write output file '" + path + "'");
  out << text;
  if (!out) throw ParameterError("failed writing output file '" + path + "'");
}

void apply_globals(Scenario& s, const Globals& g) {
  if (!g.abs_tol.empty()) assign(s, "abs_tol", g.abs_tol);
  if (!g.rel_tol.empty()) assign(s, "rel_tol", g.rel_tol);
  if (!g.jobs.empty()) assign(s, "jobs", g.jobs);
  if (!g.output.empty()) assign(s, "output", g.output);
}

// `key=value` tokens, as in `--three-point p=0.1 q=0.1`.
std::map<std::string, double> key_values(const std::vector<std::string>& tokens,
                                         const std::string& what) {
  std::map<std::string, double> out;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw SpecParseError(what + ": expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (out.count(key)) throw SpecParseError(what + ": '" + key + "' given twice");
    out[key] = parse_number(tok.substr(eq + 1), what + " " + key);
  }
  return out;
}

std::vector<double> number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
  return out;
}

std::string discrete_report(const DiscreteDistribution& d) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "H = %.6f\nV = %.6f\n", discrete_entropy(d), discrete_varentropy(d));
  return buf;
}

std::string simplex_report(double h) {
  const ThreePointReport r = discrete_varentropy_zeros_and_max(h);
  std::ostringstream out;
  char buf[128];
  out << "p,q,V\n";
  for (const auto& z : r.zeros) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.3e\n", z.p, z.q, z.varentropy);
    out << buf;
  }
  for (const auto& m : r.maximizers) {
    std::snprintf(buf, sizeof(buf), "max %.6f,%.6f,%.6f\n", m.p, m.q, m.varentropy);
    out << buf;
  }
  return out.str();
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return kDomain;
  if (dynamic_cast<const NumericalError*>(&e)) return kNumerical;
  if (dynamic_cast<const SpecParseError*>(&e) || dynamic_cast<const ParameterError*>(&e)) {
    return kBadInput;
  }
  return kCheckFailed;
}

std::string diagnostic(int code, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return "error[" + std::to_string(code) + "]: " + flat;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Residual entropy and varentropy of lifetime distributions", "resvar"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--abs-tol", g.abs_tol, "Absolute quadrature tolerance");
  app.add_option("--rel-tol", g.rel_tol, "Relative quadrature tolerance");
  app.add_option("--jobs", g.jobs, "Worker threads for grid evaluation");
  app.add_option("--output,-o", g.output, "Output file (default stdout)");

  // measure
  auto* measure = app.add_subcommand("measure", "Residual measures of a distribution on an age grid");
  std::string scenario_path;
  std::map<std::string, std::string> m_opts;
  bool m_log = false;
  bool m_err = false;
  measure->add_option("--scenario", scenario_path, "key = value scenario file");
  struct FlagKey {
    const char* flag;
    const char* key;
    const char* help;
  };
  for (const FlagKey& o : {FlagKey{"--dist", "dist", "Family spec, e.g. weibull(lambda=1,k=1.5)"},
                           FlagKey{"--model", "model", "phm(a=..), series(n=..) or ou_fpt(..)"},
                           FlagKey{"--baseline", "baseline", "Baseline family spec for --model"},
                           FlagKey{"--grid", "grid", "start:stop:count"},
                           FlagKey{"--measures", "measures", "Comma-separated columns, e.g. H,V,m"},
                           FlagKey{"--alpha", "alpha", "Weighted bound alpha"},
                           FlagKey{"--beta", "beta", "Weighted bound beta"},
                           FlagKey{"--interval-k", "interval_k", "Interval multiplier k"}}) {
    measure->add_option(o.flag, m_opts[o.key], o.help);
  }
  measure->add_flag("--log-grid", m_log, "Geometric grid spacing");
  measure->add_flag("--with-errors", m_err, "Add <measure>_err columns");

  // phm
  auto* phm = app.add_subcommand("phm", "Proportional hazards model via the l(y; a) integrals");
  std::string p_baseline;
  std::string p_grid = "0:4:41";
  std::string p_measures = "H,V,interval";
  double p_a = 0.0;
  int p_n = 0;
  double p_k = 2.0;
  bool p_log = false;
  bool p_err = false;
  phm->add_option("--baseline", p_baseline, "Baseline family spec")->required();
  auto* a_opt = phm->add_option("--a", p_a, "Exponent a > 0");
  auto* n_opt = phm->add_option("--n", p_n, "Series system of n units");
  a_opt->excludes(n_opt);
  phm->add_option("--grid", p_grid, "start:stop:count");
  phm->add_option("--measures", p_measures, "Comma-separated columns");
  phm->add_option("--interval-k", p_k, "Interval multiplier k");
  phm->add_flag("--log-grid", p_log, "Geometric grid spacing");
  phm->add_flag("--with-errors", p_err, "Add <measure>_err columns");

  // ou-fpt
  auto* ou = app.add_subcommand("ou-fpt", "Residual H and V of the OU first-passage time with catastrophes");
  OUFPTParams ou_p;
  std::string ou_grid;
  bool ou_log = false;
  bool ou_err = false;
  ou->add_option("--y", ou_p.y, "Initial state");
  ou->add_option("--alpha", ou_p.alpha, "Reversion rate");
  ou->add_option("--nu", ou_p.nu, "Variance parameter");
  ou->add_option("--xi", ou_p.xi, "Catastrophe rate");
  ou->add_option("--grid", ou_grid, "start:stop:count (default: 60 points up to 5)");
  ou->add_flag("--log-grid", ou_log, "Geometric grid spacing");
  ou->add_flag("--with-errors", ou_err, "Add <measure>_err columns");

  // discrete
  auto* disc = app.add_subcommand("discrete", "Entropy and varentropy of a discrete law");
  std::vector<std::string> three_point;
  std::string bernoulli;
  std::string points;
  std::string probs;
  double simplex_h = 0.0;
  disc->add_option("--three-point", three_point, "p=.. q=.. [h=..]")->expected(1, 3);
  disc->add_option("--bernoulli", bernoulli, "theta=..");
  disc->add_option("--points", points, "Comma-separated support points");
  disc->add_option("--probs", probs, "Comma-separated probabilities");
  disc->add_option("--simplex", simplex_h, "Zeros and maximizer of V for atoms {h, 0, -h}");

  // verify
  auto* verify = app.add_subcommand("verify", "Run built-in verification suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "table1|identities|bounds|transforms|phm|oufpt|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << diagnostic(kBadInput, e.what()) << '\n';
    return kBadInput;
  }

  try {
    if (*measure) {
      Scenario s = scenario_path.empty() ? Scenario{} : load_scenario(scenario_path);
      for (const auto& [key, value] : m_opts) {
        if (!value.empty()) assign(s, key, value);
      }
      if (m_log) s.log_grid = true;
      if (m_err) s.with_errors = true;
      apply_globals(s, g);
      emit(s.output, run_scenario(s).to_csv());
      return kOk;
    }
    if (*phm) {
      Scenario s;
      s.baseline = p_baseline;
      if (n_opt->count()) {
        s.model = "series(n=" + std::to_string(p_n) + ")";
      } else if (a_opt->count()) {
        s.model = "phm(a=" + format_number(p_a) + ")";
      } else {
        throw SpecParseError("phm needs --a or --n");
      }
      s.grid = p_grid;
      s.measures = p_measures;
      s.interval_k = p_k;
      s.log_grid = p_log;
      s.with_errors = p_err;
      apply_globals(s, g);
      emit(s.output, run_scenario(s).to_csv());
      return kOk;
    }
    if (*ou) {
      Scenario s;
      apply_globals(s, g);
      const std::vector<double> ages = ou_grid.empty() ? curve_grid(5.0) : parse_grid(ou_grid, ou_log);
      emit(s.output, ou_fpt_residual_measures(ou_p, ages, s.quad_config(), s.jobs, ou_err).to_csv());
      return kOk;
    }
    if (*disc) {
      const int given = !three_point.empty() + !bernoulli.empty() + (!points.empty() || !probs.empty()) +
                        (disc->count("--simplex") > 0);
      if (given != 1) {
        throw SpecParseError("discrete needs exactly one of --three-point, --bernoulli, --points/--probs, --simplex");
      }
      std::string text;
      if (!three_point.empty()) {
        auto kv = key_values(three_point, "three-point");
        for (const auto& [k, v] : kv) {
          if (k != "p" && k != "q" && k != "h") throw SpecParseError("three-point: unknown key '" + k + "'");
        }
        if (!kv.count("p") || !kv.count("q")) throw SpecParseError("three-point needs p and q");
        text = discrete_report(DiscreteDistribution::three_point(kv["p"], kv["q"], kv.count("h") ? kv["h"] : 1.0));
      } else if (!bernoulli.empty()) {
        auto kv = key_values({bernoulli}, "bernoulli");
        if (kv.size() != 1 || !kv.count("theta")) throw SpecParseError("bernoulli needs theta=..");
        text = discrete_report(DiscreteDistribution::bernoulli(kv["theta"]));
      } else if (!points.empty() || !probs.empty()) {
        text = discrete_report(
            DiscreteDistribution(number_list(points, "points"), number_list(probs, "probs")));
      } else {
        if (!(simplex_h > 0.0)) throw ParameterError("simplex: h must be positive");
        text = simplex_report(simplex_h);
      }
      emit(g.output, text);
      return kOk;
    }
    if (*verify) {
      Scenario s;
      apply_globals(s, g);
      const VerifyReport report = run_verify(suite, s.jobs);
      std::ostringstream out;
      report.write(out);
      emit(s.output, out.str());
      return report.ok() ? kOk : kCheckFailed;
    }
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    std::cerr << diagnostic(code, e.what()) << '\n';
    return code;
  }
  return kOk;
}

}  // namespace resvar::app
