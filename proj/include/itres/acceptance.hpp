#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itres {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0 when the criterion has no runtime bound
};

/// Evaluates the acceptance criteria 1..12.
std::vector<CriterionResult> run_acceptance();

/// One line per criterion: "PASS 3 q-table ...". Returns true when all pass.
bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace itres
