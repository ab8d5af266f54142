#include <iostream>

#include "rmt/acceptance.hpp"

int main() {
  auto results = rmt::run_acceptance(std::cout);
  int failed = 0;
  for (auto& r : results)
    if (!r.pass) ++failed;
  std::cout << (failed == 0 ? "ACCEPTANCE: all criteria passed"
                            : "ACCEPTANCE: " + std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
