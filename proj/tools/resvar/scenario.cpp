#include "resvar/scenario.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace resvar::app {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw SpecParseError("scenario key '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

QuadConfig Scenario::quad_config() const {
  QuadConfig cfg;
  cfg.abs_tol = abs_tol;
  cfg.rel_tol = rel_tol;
  cfg.validate();
  return cfg;
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw SpecParseError(what + ": '" + text + "' is not a number");
  }
  return v;
}

void assign(Scenario& s, const std::string& key, const std::string& value) {
  if (key == "dist") s.dist = value;
  else if (key == "model") s.model = value;
  else if (key == "baseline") s.baseline = value;
  else if (key == "grid") s.grid = value;
  else if (key == "log_grid") s.log_grid = parse_bool(value, key);
  else if (key == "measures") s.measures = value;
  else if (key == "alpha") s.alpha = parse_number(value, key);
  else if (key == "beta") s.beta = parse_number(value, key);
  else if (key == "interval_k") s.interval_k = parse_number(value, key);
  else if (key == "with_errors") s.with_errors = parse_bool(value, key);
  else if (key == "output") s.output = value;
  else if (key == "abs_tol") s.abs_tol = parse_number(value, key);
  else if (key == "rel_tol") s.rel_tol = parse_number(value, key);
  else if (key == "jobs") {
    const double j = parse_number(value, key);
    if (j < 1 || j != static_cast<int>(j)) throw SpecParseError("jobs must be a positive integer");
    s.jobs = static_cast<int>(j);
  } else {
    throw SpecParseError("unknown scenario key '" + key + "'");
  }
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    // Family specs contain '=' too; the key never does, so split at the first one.
    if (eq == std::string::npos) {
      throw SpecParseError("scenario line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw SpecParseError("scenario line " + std::to_string(lineno) + ": empty key or value");
    }
    assign(s, key, value);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

std::vector<double> parse_grid(const std::string& text, bool geometric) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw SpecParseError("grid '" + text + "' is not start:stop:count");
  const double start = parse_number(parts[0], "grid start");
  const double stop = parse_number(parts[1], "grid stop");
  const double count = parse_number(parts[2], "grid count");
  if (!(count >= 1) || count != static_cast<int>(count)) {
    throw SpecParseError("grid count must be a positive integer");
  }
  try {
    return geometric ? geometric_grid(start, stop, static_cast<int>(count))
                     : linear_grid(start, stop, static_cast<int>(count));
  } catch (const ParameterError& e) {
    throw SpecParseError(std::string("grid '") + text + "': " + e.what());
  }
}

OUFPTParams ou_params_from_spec(const SpecCall& call) {
  for (const auto& [k, v] : call.params) {
    if (k != "y" && k != "alpha" && k != "nu" && k != "xi") {
      throw SpecParseError("ou_fpt: unknown parameter '" + k + "'");
    }
  }
  OUFPTParams p;
  if (call.has("y")) p.y = call.get("y");
  if (call.has("alpha")) p.alpha = call.get("alpha");
  if (call.has("nu")) p.nu = call.get("nu");
  if (call.has("xi")) p.xi = call.get("xi");
  p.validate();
  return p;
}

ResolvedModel resolve_model(const Scenario& s) {
  if (!s.dist.empty() && !s.model.empty()) {
    throw SpecParseError("give either a distribution or a model, not both");
  }
  if (!s.dist.empty()) {
    if (!s.baseline.empty()) throw SpecParseError("baseline only applies to phm and series models");
    return {make_distribution(parse_family(s.dist)), std::nullopt};
  }
  if (s.model.empty()) throw SpecParseError("scenario names no distribution or model");
  const SpecCall call = parse_spec(s.model);
  if (call.name == "ou_fpt" || call.name == "oufpt") {
    if (!s.baseline.empty()) throw SpecParseError("ou_fpt takes no baseline");
    return {ou_fpt_distribution(ou_params_from_spec(call)), std::nullopt};
  }
  if (call.name != "phm" && call.name != "series") {
    throw SpecParseError("unknown model '" + call.name + "'");
  }
  if (s.baseline.empty()) throw SpecParseError(call.name + " model needs a baseline");
  Distribution base = make_distribution(parse_family(s.baseline));
  const std::string key = call.name == "phm" ? "a" : "n";
  if (call.params.size() != 1 || !call.has(key)) {
    throw SpecParseError(call.name + " model takes exactly one parameter '" + key + "'");
  }
  if (call.name == "phm") {
    PHModel m = make_phm(std::move(base), call.get("a"));
    return {phm_distribution(m), m};
  }
  const double n = call.get("n");
  if (n != static_cast<int>(n)) throw DomainError("series: unit count must be an integer");
  PHModel m = series_system(static_cast<int>(n), std::move(base));
  return {phm_distribution(m), m};
}

MeasureCurve run_scenario(const Scenario& s) {
  const std::vector<double> ages = parse_grid(s.grid, s.log_grid);
  MeasureRequest req;
  req.measures = parse_measures(s.measures);
  req.alpha = s.alpha;
  req.beta = s.beta;
  req.interval_k = s.interval_k;
  req.with_errors = s.with_errors;
  const QuadConfig cfg = s.quad_config();
  const ResolvedModel model = resolve_model(s);
  if (model.phm) return evaluate_phm_curve(*model.phm, ages, req, cfg, s.jobs);
  return evaluate_curve(model.distribution, ages, req, cfg, s.jobs);
}

}  // namespace resvar::app
