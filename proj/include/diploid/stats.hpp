#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace diploid {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double stderr_ = 0.0;
};

Summary summarize(const std::vector<double>& values);

/// Two-sample chi-square homogeneity test on integer-valued samples. Adjacent
/// values are pooled until every bin holds at least `min_bin` observations.
struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  /// statistic <= dof + 3 sqrt(2 dof), a 3-sigma rule on the chi-square law.
  bool within_3sigma = true;
};

using Histogram = std::map<std::int64_t, std::uint64_t>;

ChiSquareResult two_sample_chi_square(const Histogram& first, const Histogram& second,
                                      std::uint64_t min_bin = 10);

/// Sum of independent chi-square tests (statistics and degrees of freedom add).
ChiSquareResult combine(const std::vector<ChiSquareResult>& parts);

}  // namespace diploid
