#include "diploid/stats.hpp"

#include <cmath>
#include <set>

namespace diploid {

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

namespace {

bool within(double stat, int dof) {
  return stat <= dof + 3.0 * std::sqrt(2.0 * dof);
}

}  // namespace

ChiSquareResult two_sample_chi_square(const Histogram& first, const Histogram& second,
                                      std::uint64_t min_bin) {
  std::set<std::int64_t> keys;
  double n1 = 0.0, n2 = 0.0;
  for (auto [k, c] : first) {
    keys.insert(k);
    n1 += static_cast<double>(c);
  }
  for (auto [k, c] : second) {
    keys.insert(k);
    n2 += static_cast<double>(c);
  }
  ChiSquareResult res;
  if (n1 == 0.0 || n2 == 0.0) return res;

  auto count = [](const Histogram& h, std::int64_t k) -> double {
    auto it = h.find(k);
    return it == h.end() ? 0.0 : static_cast<double>(it->second);
  };
  std::vector<std::pair<double, double>> bins;
  double a = 0.0, b = 0.0;
  for (auto k : keys) {
    a += count(first, k);
    b += count(second, k);
    if (a + b >= static_cast<double>(min_bin)) {
      bins.emplace_back(a, b);
      a = b = 0.0;
    }
  }
  if (a + b > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(a, b);
    } else {
      bins.back().first += a;
      bins.back().second += b;
    }
  }
  const double k1 = std::sqrt(n2 / n1);
  const double k2 = std::sqrt(n1 / n2);
  for (auto [o1, o2] : bins) {
    const double d = k1 * o1 - k2 * o2;
    res.statistic += d * d / (o1 + o2);
  }
  res.dof = static_cast<int>(bins.size()) - 1;
  res.within_3sigma = within(res.statistic, res.dof);
  return res;
}

ChiSquareResult combine(const std::vector<ChiSquareResult>& parts) {
  ChiSquareResult r;
  for (const auto& p : parts) {
    r.statistic += p.statistic;
    r.dof += p.dof;
  }
  r.within_3sigma = within(r.statistic, r.dof);
  return r;
}

}  // namespace diploid
