#include <cstdlib>
#include <iostream>

#include "digitsum/verify.hpp"

int main() {
  int failed = 0;
  digitsum::run_acceptance({}, [&](const digitsum::CriterionResult& r) {
    std::cout << digitsum::format_result(r) << std::endl;
    failed += !r.pass;
  });
  if (failed == 0) {
    std::cout << "acceptance: all " << digitsum::kCriterionCount << " criteria pass\n";
    return EXIT_SUCCESS;
  }
  std::cout << "acceptance: " << failed << " criteria FAIL\n";
  return EXIT_FAILURE;
}
