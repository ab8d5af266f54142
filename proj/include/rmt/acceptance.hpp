#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmt {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs the full acceptance battery (exact combinatorial identities, circuit
// count laws, limit-vs-oracle agreement, simulation matches). Prints one
// "PASS/FAIL" line per criterion to `os` as it goes.
std::vector<CriterionResult> run_acceptance(std::ostream& os);

bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace rmt
