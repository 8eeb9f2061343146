// Copyright 2026 The qcdbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Oracle-agreement suite: analytic formulas against brute-force numerics, and
// the proven orderings between bounds, on seeded random inputs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcd {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  double max_error = 0.0;  // worst observed violation or disagreement
  double tolerance = 0.0;
  std::string detail;      // inputs of the worst case, or the error message
};

struct CrosscheckOptions {
  std::uint64_t seed = 20260415;
  double budget_seconds = 600.0;  // checks starting after this are skipped
  double helstrom_tol = 1e-8;
  /// Deliberate defect for exercising the harness: "" (none) or "nulling-sign",
  /// which flips the sign of the last nulling outcome probability.
  std::string fault;
};

struct CrosscheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

CrosscheckReport run_crosscheck(const CrosscheckOptions& options = {});

/// One line per check: "PASS|FAIL|SKIP name max_error tolerance detail".
void write_report(const CrosscheckReport& r, std::ostream& os);
void write_report_json(const CrosscheckReport& r, std::ostream& os);

}  // namespace qcd
