#pragma once

#include <string>
#include <vector>

namespace wdistill {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // worst deviation or failure description
};

// Algebraic self-checks of the W basis, stabilizer group, measurement
// operators, complementary basis and the closed-form recurrence.
std::vector<CheckResult> run_structural_checks();

}  // namespace wdistill
