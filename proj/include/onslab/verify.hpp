#pragma once

#include "onslab/core.hpp"

#include <string>
#include <vector>

namespace onslab::verify {

struct CheckResult {
  std::string label;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

struct VerifyConfig {
  std::uint64_t masterSeed = 7;
  int restarts = 32;
  std::int64_t samples = 200000;
  double tol = 0.05;
};

// The numbered verification groups behind the suites; each returns one or
// more threshold checks.
std::vector<CheckResult> runCriterion(int id, const VerifyConfig& config);
int criterionCount();
std::string criterionTitle(int id);

std::vector<std::string> suiteNames();
SuiteReport runSuite(const std::string& name, const VerifyConfig& config);

}  // namespace onslab::verify
