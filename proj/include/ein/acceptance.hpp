#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ein {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0, budget = 0;
};

constexpr int kCriteria = 10;

// Criteria that are known to fail for documented reasons.
const std::vector<int>& expected_red();

CriterionResult run_criterion(int id);
// Runs the given criteria (all when empty), printing one line each to out if given.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {}, std::ostream* out = nullptr);
std::string format_line(const CriterionResult& r);
// True when the failing criteria are exactly the expected ones among those run.
bool matches_expected(const std::vector<CriterionResult>& rs);

}  // namespace ein
