// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <iostream>

#include "verify.hpp"

int main() {
  using namespace advdiff::verify;
  Suite suite;
  int failed = 0;
  for (const auto& id : criterion_ids()) {
    const CriterionResult r = suite.run(id);
    std::cout << format_line(r) << std::endl;
    if (!r.passed()) ++failed;
  }
  std::cout << (criterion_ids().size() - failed) << "/" << criterion_ids().size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
