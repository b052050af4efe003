// Acceptance suite: one pass/fail line per criterion; nonzero exit on failure.
#include <iostream>

#include "fglab/acceptance.hpp"

int main() {
  auto results = fglab::run_acceptance(std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " ("
            << results.size() - failed << "/" << results.size() << ")\n";
  return failed == 0 ? 0 : 1;
}
