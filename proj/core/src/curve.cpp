#include "resvar/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "resvar/bounds.hpp"
#include "resvar/errors.hpp"
#include "resvar/residual.hpp"

namespace resvar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Row {
  std::vector<double> values;
  std::vector<double> errors;
};

std::string at_age(double t, const char* what) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "at age t = " << t << ": " << what;
  return msg.str();
}

[[noreturn]] void rethrow_at_age(double t) {
  try {
    throw;
  } catch (const QuadratureError& e) {
    throw QuadratureError(at_age(t, e.what()), e.best_estimate(), e.error_estimate(),
                          e.abscissa());
  } catch (const DivergenceError& e) {
    throw DivergenceError(at_age(t, e.what()));
  } catch (const NumericalError& e) {
    throw NumericalError(at_age(t, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(at_age(t, e.what()));
  } catch (const MassError& e) {
    throw MassError(at_age(t, e.what()), e.mass());
  } catch (const SpecParseError& e) {
    throw SpecParseError(at_age(t, e.what()));
  } catch (const ParameterError& e) {
    throw ParameterError(at_age(t, e.what()));
  }
}

std::vector<std::string> column_names(const MeasureRequest& req) {
  std::vector<std::string> cols;
  for (Measure m : req.measures) {
    if (m == Measure::Interval) {
      cols.push_back("interval_lo");
      cols.push_back("interval_hi");
    } else {
      cols.push_back(measure_name(m));
    }
  }
  return cols;
}

void check_request(const MeasureRequest& req) {
  if (req.measures.empty()) throw ParameterError("no measures requested");
  for (Measure m : req.measures) {
    if (m == Measure::BoundWeighted && (std::isnan(req.alpha) || std::isnan(req.beta))) {
      throw ParameterError("bound_w needs alpha and beta");
    }
  }
  if (!(req.interval_k >= 0.0)) throw ParameterError("interval multiplier must be >= 0");
}

// H, V and their error estimates for one age.
struct InfoAtAge {
  double h = 0.0;
  double v = 0.0;
  double h_err = 0.0;
  double v_err = 0.0;
};

using InfoFn = std::function<InfoAtAge(double)>;

Row evaluate_row(const Distribution& d, double t, const MeasureRequest& req, const QuadConfig& cfg,
                 const InfoFn& info_fn) {
  Row row;
  bool have_info = false;
  InfoAtAge info;
  auto need_info = [&]() -> const InfoAtAge& {
    if (!have_info) {
      info = info_fn(t);
      have_info = true;
    }
    return info;
  };
  auto push = [&](double v, double e) {
    row.values.push_back(v);
    row.errors.push_back(e);
  };
  for (Measure m : req.measures) {
    switch (m) {
      case Measure::Entropy:
        push(need_info().h, need_info().h_err);
        break;
      case Measure::Varentropy:
        push(need_info().v, need_info().v_err);
        break;
      case Measure::MeanResidualLife:
        push(mean_residual_life(d, t, cfg), kNaN);
        break;
      case Measure::VarianceResidual:
        push(variance_residual_life(d, t, cfg), kNaN);
        break;
      case Measure::Vitality:
        push(vitality(d, t, cfg), kNaN);
        break;
      case Measure::WeightedEntropy:
        push(weighted_residual_entropy(d, t, cfg), kNaN);
        break;
      case Measure::BoundCP:
        push(cp_lower_bound(d, t, cfg).bound_value, kNaN);
        break;
      case Measure::BoundLogConcave:
        push(logconcave_upper_bound(d, t, cfg).bound_value, kNaN);
        break;
      case Measure::BoundWeighted:
        push(weighted_upper_bound(d, t, req.alpha, req.beta, cfg).bound_value, kNaN);
        break;
      case Measure::Interval: {
        const InfoAtAge& i = need_info();
        if (i.v < -std::max(1e-9, 10.0 * i.v_err)) {
          throw NumericalError("negative residual varentropy " + format_number(i.v));
        }
        const double half = req.interval_k * std::sqrt(std::max(i.v, 0.0));
        const double err = i.h_err + req.interval_k * (i.v > 0.0 ? i.v_err / (2.0 * std::sqrt(i.v)) : 0.0);
        push(i.h - half, err);
        push(i.h + half, err);
        break;
      }
    }
  }
  return row;
}

MeasureCurve assemble(const Distribution& d, const std::vector<double>& ages,
                      const MeasureRequest& req, const QuadConfig& cfg, int jobs,
                      const InfoFn& info_fn) {
  check_request(req);
  cfg.validate();
  MeasureCurve curve;
  curve.ages = ages;
  curve.columns = column_names(req);
  curve.with_errors = req.with_errors;
  for (std::size_t i = 1; i < ages.size(); ++i) {
    if (!(ages[i] > ages[i - 1])) throw ParameterError("curve ages must be strictly increasing");
  }
  std::vector<Row> rows(ages.size());
  parallel_for(ages.size(), jobs, [&](std::size_t i) {
    try {
      rows[i] = evaluate_row(d, ages[i], req, cfg, info_fn);
    } catch (const Error&) {
      rethrow_at_age(ages[i]);
    }
  });
  for (auto& r : rows) {
    curve.values.push_back(std::move(r.values));
    curve.errors.push_back(std::move(r.errors));
  }
  return curve;
}

}  // namespace

Measure parse_measure(const std::string& name) {
  if (name == "H") return Measure::Entropy;
  if (name == "V") return Measure::Varentropy;
  if (name == "m") return Measure::MeanResidualLife;
  if (name == "sigma2") return Measure::VarianceResidual;
  if (name == "delta") return Measure::Vitality;
  if (name == "Hw") return Measure::WeightedEntropy;
  if (name == "bound_cp") return Measure::BoundCP;
  if (name == "bound_lc") return Measure::BoundLogConcave;
  if (name == "bound_w") return Measure::BoundWeighted;
  if (name == "interval" || name == "interval_k") return Measure::Interval;
  throw SpecParseError("unknown measure '" + name + "'");
}

std::vector<Measure> parse_measures(const std::string& list) {
  std::vector<Measure> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw SpecParseError("empty entry in measure list '" + list + "'");
    const Measure m = parse_measure(item.substr(b, e - b + 1));
    if (std::find(out.begin(), out.end(), m) != out.end()) {
      throw SpecParseError("measure '" + item + "' listed twice");
    }
    out.push_back(m);
  }
  if (out.empty()) throw SpecParseError("empty measure list");
  return out;
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::Entropy:
      return "H";
    case Measure::Varentropy:
      return "V";
    case Measure::MeanResidualLife:
      return "m";
    case Measure::VarianceResidual:
      return "sigma2";
    case Measure::Vitality:
      return "delta";
    case Measure::WeightedEntropy:
      return "Hw";
    case Measure::BoundCP:
      return "bound_cp";
    case Measure::BoundLogConcave:
      return "bound_lc";
    case Measure::BoundWeighted:
      return "bound_w";
    case Measure::Interval:
      return "interval";
  }
  return "?";
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw ParameterError("grid count must be at least 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ParameterError("grid ends must be finite");
  if (count == 1) return {start};
  if (!(stop > start)) throw ParameterError("grid needs start < stop");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
  }
  g.back() = stop;
  return g;
}

std::vector<double> geometric_grid(double start, double stop, int count) {
  if (count < 1) throw ParameterError("grid count must be at least 1");
  if (!(start > 0.0) || !std::isfinite(stop)) {
    throw ParameterError("geometric grid needs 0 < start");
  }
  if (count == 1) return {start};
  if (!(stop > start)) throw ParameterError("grid needs start < stop");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double ratio = std::log(stop / start);
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = start * std::exp(ratio * i / (count - 1));
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

std::vector<double> curve_grid(double stop, int count) {
  if (count < 4) throw ParameterError("curve grid needs at least 4 points");
  if (!(stop > 0.0)) throw ParameterError("curve grid needs stop > 0");
  const int n_geo = count / 3;
  std::vector<double> g = geometric_grid(stop / 1000.0, stop / 10.0, n_geo);
  const std::vector<double> tail = linear_grid(stop / 10.0, stop, count - n_geo + 1);
  g.insert(g.end(), tail.begin() + 1, tail.end());
  return g;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> failures(n);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

MeasureCurve evaluate_curve(const Distribution& d, const std::vector<double>& ages,
                            const MeasureRequest& request, const QuadConfig& cfg, int jobs) {
  return assemble(d, ages, request, cfg, jobs, [&](double t) {
    const ResidualInformation i = residual_information(d, t, cfg);
    return InfoAtAge{i.entropy, i.varentropy, i.entropy_error, i.varentropy_error};
  });
}

MeasureCurve evaluate_phm_curve(const PHModel& m, const std::vector<double>& ages,
                                const MeasureRequest& request, const QuadConfig& cfg, int jobs) {
  const Distribution d = phm_distribution(m);
  return assemble(d, ages, request, cfg, jobs, [&](double t) {
    const PHMResidual i = phm_residual_information(m, t, cfg);
    return InfoAtAge{i.entropy, i.varentropy, i.entropy_error, i.varentropy_error};
  });
}

}  // namespace resvar
