#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lep {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// One acceptance criterion: a self-contained check with its own fixed
/// seeds, tolerances and runtime budget (0 = unbounded).
struct Criterion {
  int id = 0;
  std::string name;
  double budget_seconds = 0.0;
  std::function<CriterionResult()> run;
};

/// The ten acceptance criteria in order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs a criterion, timing it and failing it if it overruns its budget or
/// throws.
CriterionResult run_criterion(const Criterion& c);

/// "PASS [id] name: detail (1.23 s)" or the FAIL equivalent.
std::string format_result(const CriterionResult& r);

}  // namespace lep
