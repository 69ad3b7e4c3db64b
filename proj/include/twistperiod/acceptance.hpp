#pragma once

#include <string>
#include <vector>

namespace twistperiod {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12); never throws, failures land in `detail`.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

/// "[PASS] 6 euler integral (2F1): ... (1.23 s)"
std::string format_result(const CriterionResult& r);

}  // namespace twistperiod
