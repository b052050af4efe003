#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fglab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the full verification suite (one result per criterion) and prints one
// pass/fail line per criterion to `log`. All tolerances are fixed in code.
std::vector<CriterionResult> run_acceptance(std::ostream& log, unsigned long long seed = 20240811ull);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fglab
