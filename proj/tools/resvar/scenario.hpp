#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <resvar/resvar.hpp>

namespace resvar::app {

/// One measure run: what to evaluate, where, and how precisely.
/// Text form is `key = value` per line; `#` starts a comment.
struct Scenario {
  std::string dist;      // family spec, e.g. weibull(lambda=1,k=2)
  std::string model;     // phm(a=..) | series(n=..) | ou_fpt(y=..,alpha=..,nu=..,xi=..)
  std::string baseline;  // family spec for phm / series
  std::string grid = "0:1:11";
  bool log_grid = false;
  std::string measures = "H,V";
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double interval_k = 2.0;
  bool with_errors = false;
  std::string output;
  double abs_tol = QuadConfig{}.abs_tol;
  double rel_tol = QuadConfig{}.rel_tol;
  int jobs = 1;

  QuadConfig quad_config() const;
};

/// Applies one `key = value` assignment. Throws SpecParseError.
void assign(Scenario& s, const std::string& key, const std::string& value);

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// `start:stop:count`; geometric spacing needs start > 0.
std::vector<double> parse_grid(const std::string& text, bool geometric);

double parse_number(const std::string& text, const std::string& what);

/// The distribution a scenario describes, plus the PHM view when the model
/// is phm or series.
struct ResolvedModel {
  Distribution distribution;
  std::optional<PHModel> phm;
};

ResolvedModel resolve_model(const Scenario& s);

OUFPTParams ou_params_from_spec(const SpecCall& call);

MeasureCurve run_scenario(const Scenario& s);

}  // namespace resvar::app
