#include "diploid/lattice.hpp"

#include <limits>
#include <string>

#include "diploid/errors.hpp"

namespace diploid {

Lattice::Lattice(std::vector<int> sides, Boundary boundary)
    : sides_(std::move(sides)), boundary_(boundary) {
  if (sides_.empty()) throw UsageError("lattice dimension must be at least 1");
  std::size_t n = 1;
  for (int side : sides_) {
    if (side < 1) throw UsageError("lattice side lengths must be positive");
    n *= static_cast<std::size_t>(side);
    if (n > static_cast<std::size_t>(std::numeric_limits<SiteIndex>::max())) {
      throw UsageError("lattice too large");
    }
  }
  size_ = n;
  origin_.resize(sides_.size());
  for (std::size_t i = 0; i < sides_.size(); ++i) origin_[i] = sides_[i] / 2;

  const int d = dimension();
  neighbors_.resize(size_ * static_cast<std::size_t>(2 * d));
  std::vector<std::size_t> stride(sides_.size(), 1);
  for (std::size_t i = 1; i < sides_.size(); ++i) stride[i] = stride[i - 1] * sides_[i - 1];

  std::vector<int> coords(sides_.size(), 0);
  for (std::size_t site = 0; site < size_; ++site) {
    SiteIndex* out = neighbors_.data() + site * static_cast<std::size_t>(2 * d);
    for (int axis = 0; axis < d; ++axis) {
      const int c = coords[axis];
      const int side = sides_[axis];
      const auto s = static_cast<std::int64_t>(site);
      const auto st = static_cast<std::int64_t>(stride[axis]);
      // low neighbor
      if (c > 0) {
        out[2 * axis] = static_cast<SiteIndex>(s - st);
      } else if (is_torus()) {
        out[2 * axis] = static_cast<SiteIndex>(s + st * (side - 1));
      } else {
        out[2 * axis] = kLowExterior;
      }
      // high neighbor
      if (c < side - 1) {
        out[2 * axis + 1] = static_cast<SiteIndex>(s + st);
      } else if (is_torus()) {
        out[2 * axis + 1] = static_cast<SiteIndex>(s - st * (side - 1));
      } else {
        out[2 * axis + 1] = kHighExterior;
      }
    }
    for (int axis = 0; axis < d; ++axis) {
      if (++coords[axis] < sides_[axis]) break;
      coords[axis] = 0;
    }
  }
}

std::vector<int> Lattice::coordinates(std::size_t site) const {
  std::vector<int> coords(sides_.size());
  for (std::size_t axis = 0; axis < sides_.size(); ++axis) {
    coords[axis] = static_cast<int>(site % sides_[axis]);
    site /= sides_[axis];
  }
  return coords;
}

std::size_t Lattice::index(std::span<const int> coords) const {
  if (coords.size() != sides_.size()) throw UsageError("coordinate dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t axis = sides_.size(); axis-- > 0;) {
    if (coords[axis] < 0 || coords[axis] >= sides_[axis]) {
      throw UsageError("coordinate " + std::to_string(coords[axis]) + " out of range on axis " +
                       std::to_string(axis));
    }
    idx = idx * sides_[axis] + static_cast<std::size_t>(coords[axis]);
  }
  return idx;
}

void Lattice::set_origin(std::vector<int> origin) {
  (void)index(origin);
  origin_ = std::move(origin);
}

Lattice ring(int n) { return Lattice({n}, Boundary::torus()); }

Lattice window(int n, Genotype low_exterior, Genotype high_exterior) {
  return Lattice({n}, Boundary::frozen(low_exterior, high_exterior));
}

}  // namespace diploid
