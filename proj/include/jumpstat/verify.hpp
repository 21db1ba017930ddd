#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jumpstat {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Cross-method verification suite. Each check prints nothing; callers
/// format the results (one pass/fail line per check).
std::vector<CheckResult> run_verification_suite();

/// Formats "PASS"/"FAIL" lines; returns true when every check passed.
bool report_verification(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace jumpstat
