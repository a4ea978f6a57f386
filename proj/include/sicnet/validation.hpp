#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sicnet {

struct Check {
  std::string name;
  double measured = 0.0;  // gap, ratio or runtime, depending on the check
  double limit = 0.0;
  bool passed = false;
  bool gating = true;  // false: reported for diagnosis only
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double runtime_ms = 0.0;

  bool passed() const;
  std::size_t gating_count() const;
  std::size_t gating_failures() const;
};

struct ValidationBudget {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 20240917;
  unsigned threads = 0;
};

CriterionReport check_numerics(const ValidationBudget& b);          // 1
CriterionReport check_cancellation(const ValidationBudget& b);      // 2
CriterionReport check_sic_chain(const ValidationBudget& b);         // 3
CriterionReport check_load_law(const ValidationBudget& b);          // 4
CriterionReport check_min_load(const ValidationBudget& b);          // 5
CriterionReport check_max_inst_sir(const ValidationBudget& b);      // 6
CriterionReport check_range_expansion(const ValidationBudget& b);   // 7
CriterionReport check_scale_invariance(const ValidationBudget& b);  // 8
CriterionReport check_determinism(const ValidationBudget& b);       // 9
CriterionReport check_kurtosis(const ValidationBudget& b);          // 10

CriterionReport run_criterion(int id, const ValidationBudget& b);  // throws ConfigError for ids outside 1..10

/// numerics, can, sic, minload, maxsir, rea, all
std::vector<std::string> validation_suites();
std::vector<int> suite_criteria(const std::string& suite);  // throws ConfigError

/// "CRITERION k PASS|FAIL  title  (...)" line, then one line per check when verbose.
void print_report(std::ostream& os, const CriterionReport& r, bool verbose);

}  // namespace sicnet
