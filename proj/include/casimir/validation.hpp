#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::validation {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct ValidationOptions {
  double tol = 1e-8;
  int workers = 1;
  int lmax = 0;                     // 0: automatic per geometry
  bool flip_electric_sign = false;  // mutation hook: perturbs every sphere pipeline
};

CheckResult check_dipole_oracle(const ValidationOptions& options);
CheckResult check_entropy_sign(const ValidationOptions& options);
CheckResult check_high_temperature_ratios(const ValidationOptions& options);
CheckResult check_plasma_drude_ratio(const ValidationOptions& options);
CheckResult check_pfa_orderings(const ValidationOptions& options);
CheckResult check_pfa_closed_form(const ValidationOptions& options);
CheckResult check_internal_numerics(const ValidationOptions& options);
CheckResult check_low_temperature_series(const ValidationOptions& options);

/// Runs all checks in order. When `progress` is set, each result line is
/// written as soon as the check finishes.
std::vector<CheckResult> run_all(const ValidationOptions& options, std::ostream* progress = nullptr);

/// "PASS [n] name: measured ... | expected ... (t s)".
std::string format(const CheckResult& result);

}  // namespace casimir::validation
