#pragma once

#include <cstddef>
#include <vector>

namespace diploid {

/// Complete binary tree of non-negative weights with O(log n) update and
/// proportional sampling. Internal nodes are recomputed from their children on
/// every update, so the root never accumulates drift and an all-zero tree has
/// a total of exactly 0.
class SumTree {
 public:
  SumTree() = default;
  explicit SumTree(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double total() const noexcept { return nodes_.size() > 1 ? nodes_[1] : 0.0; }
  double weight(std::size_t i) const noexcept { return nodes_[capacity_ + i]; }

  void set(std::size_t i, double w) noexcept;

  /// Index whose cumulative range contains `u`, for u in [0, total()).
  /// Never returns a zero-weight leaf while total() > 0.
  std::size_t sample(double u) const noexcept;

 private:
  std::size_t n_ = 0;
  std::size_t capacity_ = 1;
  std::vector<double> nodes_;
};

}  // namespace diploid
