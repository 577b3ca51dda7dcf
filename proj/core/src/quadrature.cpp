#include "resvar/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <utility>

#include "resvar/errors.hpp"

namespace resvar {
namespace {

// Kronrod 15-point abscissae; the odd entries are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

// One integration segment, possibly mapped from an infinite range onto [0, 1).
struct Segment {
  enum class Kind { Finite, UpperInfinite, LowerInfinite };
  Kind kind = Kind::Finite;
  double base = 0.0;   // finite end point for infinite kinds
  double scale = 1.0;  // x = base +/- scale * u / (1 - u)
  double ua = 0.0;
  double ub = 0.0;

  double to_x(double u) const {
    switch (kind) {
      case Kind::Finite:
        return u;
      case Kind::UpperInfinite:
        return base + scale * u / (1.0 - u);
      case Kind::LowerInfinite:
        return base - scale * u / (1.0 - u);
    }
    return u;
  }

  double jacobian(double u) const {
    if (kind == Kind::Finite) return 1.0;
    const double v = 1.0 - u;
    return scale / (v * v);
  }
};

struct Interval {
  const Segment* segment;
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Interval& x, const Interval& y) const { return x.error < y.error; }
};

class Evaluator {
 public:
  explicit Evaluator(const RealFunction& f) : f_(f) {}

  double operator()(const Segment& s, double u) {
    const double x = s.to_x(u);
    ++evaluations_;
    const double fx = f_(x);
    if (!std::isfinite(fx)) {
      std::ostringstream msg;
      msg << "integrand is not finite (" << fx << ") at x = " << x;
      throw QuadratureError(msg.str(), std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), x);
    }
    if (fx == 0.0) return 0.0;
    return fx * s.jacobian(u);
  }

  long evaluations() const { return evaluations_; }

 private:
  const RealFunction& f_;
  long evaluations_ = 0;
};

// QUADPACK qk15 rule with its error heuristic.
Interval gauss_kronrod15(Evaluator& eval, const Segment& s, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  const double fc = eval(s, center);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(res_k);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = eval(s, center - absc);
    const double f2 = eval(s, center + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    res_g += kWg[j] * (f1 + f2);
    res_k += kWgk[jtw] * (f1 + f2);
    res_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = eval(s, center - absc);
    const double f2 = eval(s, center + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    res_k += kWgk[jtwm1] * (f1 + f2);
    res_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double result = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > kUflow / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return Interval{&s, a, b, result, err};
}

// Narrower intervals would put the outer Kronrod nodes on an end point.
constexpr double kMinWidthUlps = 256.0;

bool wide_enough(double a, double b) {
  return (b - a) > kMinWidthUlps * kEps * std::max({std::abs(a), std::abs(b), kUflow});
}

bool splittable(double a, double b) {
  const double mid = 0.5 * (a + b);
  if (!(mid > a && mid < b)) return false;
  return wide_enough(a, mid) && wide_enough(mid, b);
}

// Drops interior breakpoints that would leave a segment too narrow to
// integrate. The outer limits are always kept.
std::vector<double> merge_close(std::span<const double> pts) {
  std::vector<double> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double x = pts[i];
    const bool last = i + 1 == pts.size();
    if (std::isinf(x) || std::isinf(out.back()) || wide_enough(out.back(), x)) {
      out.push_back(x);
    } else if (last) {
      if (out.size() > 1) out.back() = x;
      else out.push_back(x);
    }
  }
  return out;
}

QuadResult adaptive(const RealFunction& f, const std::vector<Segment>& segments,
                    const QuadConfig& cfg) {
  Evaluator eval(f);
  std::priority_queue<Interval, std::vector<Interval>, ByError> heap;

  double frozen_value = 0.0;
  double frozen_error = 0.0;
  for (const auto& s : segments) heap.push(gauss_kronrod15(eval, s, s.ua, s.ub));

  auto totals = [&]() {
    // Exact re-summation; the running sums below can drift by cancellation.
    double value = frozen_value;
    double error = frozen_error;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  auto [sum_value, sum_error] = totals();
  double value = 0.0;
  double error = 0.0;

  int intervals = static_cast<int>(heap.size());
  for (;;) {
    value = sum_value;
    error = sum_error;
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
      std::tie(sum_value, sum_error) = totals();
      if (sum_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum_value))) break;
      continue;
    }

    // Unsplittable intervals alone exceed the tolerance: no refinement can help.
    if (heap.empty() || frozen_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
      std::tie(value, error) = totals();
      std::ostringstream msg;
      msg << "quadrature stalled at round-off level: estimate " << value << ", error " << error;
      throw QuadratureError(msg.str(), value, error, std::numeric_limits<double>::quiet_NaN());
    }
    if (intervals >= cfg.max_subdivisions) {
      std::tie(value, error) = totals();
      std::ostringstream msg;
      msg << "subdivision budget of " << cfg.max_subdivisions
          << " exhausted: estimate " << value << ", error " << error;
      throw QuadratureError(msg.str(), value, error, std::numeric_limits<double>::quiet_NaN());
    }

    const Interval worst = heap.top();
    heap.pop();
    if (!splittable(worst.a, worst.b)) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Interval left = gauss_kronrod15(eval, *worst.segment, worst.a, mid);
    const Interval right = gauss_kronrod15(eval, *worst.segment, mid, worst.b);
    sum_value += left.value + right.value - worst.value;
    sum_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Final accurate summation.
  std::tie(value, error) = totals();
  return QuadResult{value, error, eval.evaluations()};
}

void check_range_value(double v) {
  if (std::isnan(v)) throw ParameterError("integration limit is NaN");
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(tail_cut > 0.0)) {
    throw ParameterError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw ParameterError("max_subdivisions must be at least 1");
  }
}

QuadResult integrate(const RealFunction& f, double a, double b, const QuadConfig& cfg) {
  check_range_value(a);
  check_range_value(b);
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }
  if (std::isinf(a) && std::isinf(b)) {
    const std::array<double, 3> pts = {a, 0.0, b};
    return integrate(f, std::span<const double>(pts), cfg);
  }
  const std::array<double, 2> pts = {a, b};
  return integrate(f, std::span<const double>(pts), cfg);
}

QuadResult integrate(const RealFunction& f, std::span<const double> breakpoints,
                     const QuadConfig& cfg) {
  cfg.validate();
  if (breakpoints.size() < 2) return {};
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    check_range_value(breakpoints[i]);
    if (i > 0 && breakpoints[i] < breakpoints[i - 1]) {
      throw ParameterError("integration breakpoints must be non-decreasing");
    }
    if (i > 0 && i + 1 < breakpoints.size() && std::isinf(breakpoints[i])) {
      throw ParameterError("only the outer integration breakpoints may be infinite");
    }
  }

  const std::vector<double> merged = merge_close(breakpoints);
  breakpoints = merged;
  std::vector<Segment> segments;
  const std::size_t n = breakpoints.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = breakpoints[i];
    const double hi = breakpoints[i + 1];
    if (lo == hi) continue;
    Segment s;
    if (std::isinf(hi)) {
      s.kind = Segment::Kind::UpperInfinite;
      s.base = lo;
      double width = 1.0;
      if (i > 0 && std::isfinite(breakpoints[i - 1])) width = lo - breakpoints[i - 1];
      s.scale = width > 0.0 ? width : 1.0;
      s.ua = 0.0;
      s.ub = 1.0;
    } else if (std::isinf(lo)) {
      s.kind = Segment::Kind::LowerInfinite;
      s.base = hi;
      double width = 1.0;
      if (i + 2 < n && std::isfinite(breakpoints[i + 2])) width = breakpoints[i + 2] - hi;
      s.scale = width > 0.0 ? width : 1.0;
      // x decreases as u grows; the jacobian is |dx/du|.
      s.ua = 0.0;
      s.ub = 1.0;
    } else {
      s.ua = lo;
      s.ub = hi;
    }
    segments.push_back(s);
  }
  if (segments.empty()) return {};
  return adaptive(f, segments, cfg);
}

double default_step(double t) {
  return std::cbrt(kEps) * std::max(1.0, std::abs(t));
}

Derivative differentiate(const RealFunction& f, double t, double step, double lo, double hi) {
  const double h = step > 0.0 ? step : default_step(t);
  if (t - h >= lo && t + h <= hi) {
    return {(f(t + h) - f(t - h)) / (2.0 * h), false};
  }
  if (t + 2.0 * h <= hi) {
    return {(-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h), true};
  }
  if (t - 2.0 * h >= lo) {
    return {(3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h), true};
  }
  throw DomainError("differentiation step does not fit inside the domain");
}

TailIntegral::TailIntegral(RealFunction g, std::vector<double> nodes, double upper, QuadConfig cfg)
    : g_(std::move(g)), nodes_(std::move(nodes)), upper_(upper), cfg_(cfg) {
  if (nodes_.empty()) throw ParameterError("TailIntegral needs at least one node");
  if (!std::is_sorted(nodes_.begin(), nodes_.end()) ||
      std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw ParameterError("TailIntegral nodes must be strictly increasing");
  }
  if (!std::isfinite(nodes_.front()) || !std::isfinite(nodes_.back()) || nodes_.back() > upper_) {
    throw ParameterError("TailIntegral nodes must be finite and below the upper limit");
  }
  tail_.assign(nodes_.size(), 0.0);
  tail_.back() = integrate(g_, nodes_.back(), upper_, cfg_).value;
  for (std::size_t i = nodes_.size() - 1; i-- > 0;) {
    tail_[i] = tail_[i + 1] + integrate(g_, nodes_[i], nodes_[i + 1], cfg_).value;
  }
}

double TailIntegral::operator()(double x) const {
  if (x >= upper_) return 0.0;
  if (x >= nodes_.back()) return integrate(g_, x, upper_, cfg_).value;
  if (x <= nodes_.front()) {
    if (x == nodes_.front()) return tail_.front();
    return tail_.front() + integrate(g_, x, nodes_.front(), cfg_).value;
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const auto i = static_cast<std::size_t>(it - nodes_.begin());  // nodes_[i-1] <= x < nodes_[i]
  if (x == nodes_[i - 1]) return tail_[i - 1];
  return tail_[i] + integrate(g_, x, nodes_[i], cfg_).value;
}

}  // namespace resvar
