#include "diploid/sum_tree.hpp"

namespace diploid {

SumTree::SumTree(std::size_t n) : n_(n) {
  while (capacity_ < n) capacity_ *= 2;
  nodes_.assign(2 * capacity_, 0.0);
}

void SumTree::set(std::size_t i, double w) noexcept {
  std::size_t node = capacity_ + i;
  nodes_[node] = w;
  for (node /= 2; node >= 1; node /= 2) nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
}

std::size_t SumTree::sample(double u) const noexcept {
  std::size_t node = 1;
  while (node < capacity_) {
    const double left = nodes_[2 * node];
    const double right = nodes_[2 * node + 1];
    if (right <= 0.0 || (left > 0.0 && u < left)) {
      node = 2 * node;
    } else {
      if (left > 0.0) u -= left;
      node = 2 * node + 1;
    }
  }
  return node - capacity_;
}

}  // namespace diploid
