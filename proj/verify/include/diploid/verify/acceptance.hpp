#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace diploid::acceptance {

struct Options {
  std::uint64_t seed = 2009;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool check_runtime = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // seconds
};

/// Criterion numbers 1..13.
std::vector<int> all_criteria();

/// Runs the requested criteria in order. Criteria 5 and 6 share their runs.
/// `on_result` is called as each one finishes.
std::vector<CriterionResult> run(const std::vector<int>& ids, const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS]  5 abp-density ... (12.3 s)"
std::string format(const CriterionResult& r);

}  // namespace diploid::acceptance
