#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gsteer::acceptance {

enum class Suite { kRegression, kProperties, kAll };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

/// One named comparison inside a criterion.
struct Check {
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  Suite suite = Suite::kRegression;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means unlimited
  std::vector<Check> checks;

  bool passed() const;
};

/// Ids of the criteria belonging to a suite, ascending.
std::vector<int> criteria_in(Suite s);

/// Runs one criterion by id (1..10); throws ValidationError otherwise.
CriterionResult run_criterion(int id);

/// Runs every criterion in the suite, in order.
std::vector<CriterionResult> run_suite(Suite s);

/// "PASS|FAIL <id> <title> (<seconds> s)" followed by one indented line per
/// check when `verbose` or the criterion failed.
void print(std::ostream& out, const CriterionResult& r, bool verbose);

}  // namespace gsteer::acceptance
