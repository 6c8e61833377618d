#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfl {

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

// Runs the selected criteria (all when `only` is empty) and writes one
// "PASS"/"FAIL" line per criterion to `out` as each completes.
auto run_acceptance(std::ostream& out, const std::vector<int>& only = {})
    -> std::vector<CriterionOutcome>;

}  // namespace cfl
