#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resvar::app {

struct CheckResult {
  std::string suite;
  std::string label;
  /// Measured discrepancy (or margin, for ordering checks).
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  /// Set when the check threw instead of producing a value.
  std::string error;
};

class VerifyReport {
 public:
  void add(CheckResult r) { results_.push_back(std::move(r)); }
  const std::vector<CheckResult>& results() const { return results_; }
  bool ok() const;
  /// One line per check, then a summary line.
  void write(std::ostream& out) const;

 private:
  std::vector<CheckResult> results_;
};

const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws SpecParseError for an
/// unknown name.
VerifyReport run_verify(const std::string& suite, int jobs = 1);

}  // namespace resvar::app
