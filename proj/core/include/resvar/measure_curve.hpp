#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resvar {

/// Measure values on a grid of ages; the CSV-facing result type.
struct MeasureCurve {
  std::vector<double> ages;
  std::vector<std::string> columns;
  /// values[i][j] is column j at ages[i].
  std::vector<std::vector<double>> values;
  /// Same shape as values; NaN where no estimate exists.
  std::vector<std::vector<double>> errors;
  bool with_errors = false;

  /// Throws ParameterError unless ages are strictly increasing and the
  /// tables match the column count.
  void validate() const;

  /// Header `t,<col>[,<col>_err]...`, one row per age, 17 significant digits.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

  /// Index of a column, or -1.
  int column(const std::string& name) const;
};

/// %.17g, round-trip exact for doubles; "nan", "inf" and "-inf" otherwise.
std::string format_number(double v);

}  // namespace resvar
