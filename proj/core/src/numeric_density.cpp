#include <algorithm>
#include <cmath>
#include <sstream>

#include "resvar/distributions.hpp"
#include "resvar/errors.hpp"

namespace resvar {
namespace {

QuadConfig table_config() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 4000;
  return cfg;
}

// Walks outward in doubling panels until the panel mass is negligible
// against the mass accumulated so far.
double search_upper(const RealFunction& pdf, double low) {
  const QuadConfig cfg = table_config();
  double a = low;
  double width = 1.0;
  double accumulated = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double b = a + width;
    const double panel = integrate(pdf, a, b, cfg).value;
    accumulated += panel;
    if (accumulated > 0.0 && panel <= 1e-17 * accumulated && i > 0) return b;
    a = b;
    width *= 2.0;
  }
  throw NumericalError("could not locate the bulk of a numeric density");
}

}  // namespace

NumericDensity::NumericDensity(RealFunction pdf, double low, double high, Options options)
    : raw_pdf_(std::move(pdf)), low_(low), high_(high), options_(std::move(options)) {
  if (!raw_pdf_) throw ParameterError("numeric density needs a pdf");
  if (!std::isfinite(low_) || !(high_ > low_)) {
    throw ParameterError("numeric density support must be [low, high) with finite low < high");
  }
  if (options_.panels < 1) throw ParameterError("numeric density needs at least one panel");

  double end = high_;
  if (std::isinf(high_)) {
    end = std::isfinite(options_.effective_high) && options_.effective_high > low_
              ? options_.effective_high
              : search_upper(raw_pdf_, low_);
  }
  // Quadratic spacing concentrates panels near the lower end.
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(options_.panels));
  for (int i = 0; i < options_.panels; ++i) {
    const double u = static_cast<double>(i) / options_.panels;
    nodes.push_back(low_ + (end - low_) * u * u);
  }
  if (end < high_) nodes.push_back(end);
  table_ = std::make_unique<TailIntegral>(raw_pdf_, std::move(nodes), high_, table_config());

  mass_ = table_->total();
  if (!(std::abs(mass_ - 1.0) <= options_.mass_tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density '" << options_.name << "' has total mass " << mass_
        << ", outside 1 +/- " << options_.mass_tolerance;
    throw MassError(msg.str(), mass_);
  }
}

double NumericDensity::pdf(double x) const {
  if (x < low_ || x > high_) return 0.0;
  return raw_pdf_(x) / mass_;
}

double NumericDensity::survival(double x) const {
  if (x <= low_) return 1.0;
  if (x >= high_) return 0.0;
  return std::clamp((*table_)(x) / mass_, 0.0, 1.0);
}

double NumericDensity::cdf(double x) const {
  if (x <= low_) return 0.0;
  if (x >= high_) return 1.0;
  return std::clamp((mass_ - (*table_)(x)) / mass_, 0.0, 1.0);
}

Distribution from_pdf(RealFunction pdf, double low, double high, NumericDensity::Options options) {
  return Distribution(
      std::make_shared<NumericDensity>(std::move(pdf), low, high, std::move(options)));
}

}  // namespace resvar
