#include "resvar/measure_curve.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "resvar/errors.hpp"

namespace resvar {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void MeasureCurve::validate() const {
  for (std::size_t i = 1; i < ages.size(); ++i) {
    if (!(ages[i] > ages[i - 1])) throw ParameterError("curve ages must be strictly increasing");
  }
  if (values.size() != ages.size()) throw ParameterError("curve has a row count mismatch");
  for (const auto& row : values) {
    if (row.size() != columns.size()) throw ParameterError("curve has a column count mismatch");
  }
  if (with_errors) {
    if (errors.size() != ages.size()) throw ParameterError("curve error table mismatch");
    for (const auto& row : errors) {
      if (row.size() != columns.size()) throw ParameterError("curve error table mismatch");
    }
  }
}

void MeasureCurve::write_csv(std::ostream& out) const {
  validate();
  out << 't';
  for (const auto& c : columns) {
    out << ',' << c;
    if (with_errors) out << ',' << c << "_err";
  }
  out << '\n';
  for (std::size_t i = 0; i < ages.size(); ++i) {
    out << format_number(ages[i]);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << ',' << format_number(values[i][j]);
      if (with_errors) out << ',' << format_number(errors[i][j]);
    }
    out << '\n';
  }
}

std::string MeasureCurve::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

int MeasureCurve::column(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace resvar
