#include "resvar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "resvar/errors.hpp"

namespace resvar {
namespace {

double lower_end(const Distribution& d) { return d.support_low(); }

double three_point_v(double p, double q) {
  const double r = 1.0 - (p + q);
  double h = 0.0;
  double m2 = 0.0;
  for (double w : {p, q, r}) {
    if (w <= 0.0) continue;
    const double l = std::log(w);
    h -= w * l;
    m2 += w * l * l;
  }
  return m2 - h * h;
}

bool in_simplex(double p, double q) { return p >= 0.0 && q >= 0.0 && p + q <= 1.0; }

}  // namespace

double information_content(const Distribution& d, double x) {
  const double f = d.pdf(x);
  if (!(f > 0.0)) {
    std::ostringstream msg;
    msg << "information content undefined at x = " << x << ": density is zero";
    throw DomainError(msg.str());
  }
  return -d.log_pdf(x);
}

InfoMeasurePair entropy_and_varentropy(const Distribution& d, const QuadConfig& cfg) {
  const double t = lower_end(d);
  const QuadResult h = conditional_expectation(d, t, [](double, double lf) { return -lf; }, cfg);
  const QuadResult v = conditional_expectation(
      d, t,
      [H = h.value](double, double lf) {
        const double c = lf + H;
        return c * c;
      },
      cfg);
  return {h.value, v.value, h.error_estimate, v.error_estimate + 2.0 * std::abs(h.error_estimate)};
}

double entropy(const Distribution& d, const QuadConfig& cfg) {
  return conditional_expectation(d, lower_end(d), [](double, double lf) { return -lf; }, cfg)
      .value;
}

double varentropy(const Distribution& d, const QuadConfig& cfg) {
  return entropy_and_varentropy(d, cfg).varentropy;
}

double varentropy_raw(const Distribution& d, const QuadConfig& cfg) {
  const double t = lower_end(d);
  const double h = entropy(d, cfg);
  const double m2 =
      conditional_expectation(d, t, [](double, double lf) { return lf * lf; }, cfg).value;
  return m2 - h * h;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> points, std::vector<double> probs) {
  if (points.size() != probs.size() || points.empty()) {
    throw ParameterError("discrete law needs matching, non-empty points and probabilities");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ParameterError("discrete probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "discrete probabilities sum to " << total << ", not 1";
    throw ParameterError(msg.str());
  }
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("discrete support points must be distinct");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (probs[i] > 0.0) {
      points_.push_back(points[i]);
      probs_.push_back(probs[i]);
    }
  }
}

DiscreteDistribution DiscreteDistribution::three_point(double p, double q, double h) {
  if (!(q >= 0.0 && p >= 0.0 && p + q <= 1.0 + 1e-15)) {
    throw ParameterError("three-point law needs 0 <= q <= 1 - p <= 1");
  }
  if (!(h > 0.0)) throw ParameterError("three-point law needs h > 0");
  return DiscreteDistribution({h, 0.0, -h}, {p, std::max(0.0, 1.0 - (p + q)), q});
}

DiscreteDistribution DiscreteDistribution::bernoulli(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError("bernoulli needs 0 <= theta <= 1");
  return DiscreteDistribution({0.0, 1.0}, {1.0 - theta, theta});
}

namespace {

// Summing in sorted order makes the results invariant under relabelling
// of the atoms, bit for bit.
std::vector<double> sorted_probs(const DiscreteDistribution& d) {
  std::vector<double> p = d.probs();
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

double discrete_entropy(const DiscreteDistribution& d) {
  double h = 0.0;
  for (double p : sorted_probs(d)) h -= p * std::log(p);
  return h;
}

double discrete_varentropy(const DiscreteDistribution& d) {
  const double h = discrete_entropy(d);
  double v = 0.0;
  for (double p : sorted_probs(d)) {
    const double c = std::log(p) + h;
    v += p * c * c;
  }
  return v;
}

ThreePointReport discrete_varentropy_zeros_and_max(double h) {
  if (!(h > 0.0)) throw ParameterError("three-point law needs h > 0");
  ThreePointReport report;
  const double third = 1.0 / 3.0;
  const std::array<std::pair<double, double>, 7> zeros = {
      {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}, {0.5, 0.0}, {0.0, 0.5}, {third, third}}};
  for (const auto& [p, q] : zeros) {
    report.zeros.push_back({p, q, discrete_varentropy(DiscreteDistribution::three_point(p, q, h))});
  }

  constexpr int n = 400;
  double best_p = 0.0;
  double best_q = 0.0;
  double best_v = -1.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double p = static_cast<double>(i) / n;
      const double q = static_cast<double>(j) / n;
      const double v = three_point_v(p, q);
      if (v > best_v) {
        best_v = v;
        best_p = p;
        best_q = q;
      }
    }
  }
  for (double step = 1.0 / n; step > 1e-12; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& [dp, dq] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                                   {1.0, 1.0}, {-1.0, -1.0}}) {
        const double p = best_p + dp * step;
        const double q = best_q + dq * step;
        if (!in_simplex(p, q)) continue;
        const double v = three_point_v(p, q);
        if (v > best_v) {
          best_v = v;
          best_p = p;
          best_q = q;
          moved = true;
        }
      }
    }
  }

  const double r = 1.0 - best_p - best_q;
  std::array<SimplexPoint, 3> perms = {{{best_p, best_q, best_v},
                                        {r, best_p, three_point_v(r, best_p)},
                                        {best_q, r, three_point_v(best_q, r)}}};
  std::sort(perms.begin(), perms.end(),
            [](const SimplexPoint& a, const SimplexPoint& b) { return a.p + a.q < b.p + b.q; });
  report.maximizers = perms;
  return report;
}

}  // namespace resvar
