#include <iostream>

#include "twistperiod/acceptance.hpp"
#include "twistperiod/parallel.hpp"

int main() {
  twistperiod::configure_threads_from_env();
  int failed = 0;
  for (int id = 1; id <= twistperiod::kCriterionCount; ++id) {
    const auto r = twistperiod::run_criterion(id);
    std::cout << twistperiod::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (twistperiod::kCriterionCount - failed) << "/" << twistperiod::kCriterionCount << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
