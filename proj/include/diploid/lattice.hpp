#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "diploid/types.hpp"

namespace diploid {

enum class BoundaryKind : std::uint8_t { torus, frozen };

/// Torus, or a frozen exterior. The frozen exterior may differ on the low and
/// high side of every axis (a half-line start needs aa on the left and bb on
/// the right).
struct Boundary {
  BoundaryKind kind = BoundaryKind::torus;
  Genotype low_exterior = Genotype::AA;
  Genotype high_exterior = Genotype::AA;

  static Boundary torus() noexcept { return {}; }
  static Boundary frozen(Genotype exterior) noexcept {
    return {BoundaryKind::frozen, exterior, exterior};
  }
  static Boundary frozen(Genotype low, Genotype high) noexcept {
    return {BoundaryKind::frozen, low, high};
  }

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

/// Finite box of Z^d with the 2d von Neumann neighborhood.
///
/// Sites are indexed row-major with axis 0 fastest. Neighbor entries are
/// site indices, or one of the exterior sentinels in frozen mode. Coordinate
/// 0 of the infinite lattice sits at `origin()` (default: floor(L_i / 2)).
class Lattice {
 public:
  using SiteIndex = std::int32_t;
  static constexpr SiteIndex kLowExterior = -1;
  static constexpr SiteIndex kHighExterior = -2;

  Lattice() = default;
  Lattice(std::vector<int> sides, Boundary boundary);

  int dimension() const noexcept { return static_cast<int>(sides_.size()); }
  std::size_t size() const noexcept { return size_; }
  int neighbor_count() const noexcept { return 2 * dimension(); }
  const std::vector<int>& sides() const noexcept { return sides_; }
  const Boundary& boundary() const noexcept { return boundary_; }
  bool is_torus() const noexcept { return boundary_.kind == BoundaryKind::torus; }

  /// Neighbors of `site`, ordered (axis 0 -, axis 0 +, axis 1 -, ...).
  std::span<const SiteIndex> neighbors(std::size_t site) const noexcept {
    return {neighbors_.data() + site * static_cast<std::size_t>(neighbor_count()),
            static_cast<std::size_t>(neighbor_count())};
  }

  /// Genotype reported by an exterior sentinel.
  Genotype exterior(SiteIndex sentinel) const noexcept {
    return sentinel == kLowExterior ? boundary_.low_exterior : boundary_.high_exterior;
  }

  bool contains(std::size_t site) const noexcept { return site < size_; }

  std::vector<int> coordinates(std::size_t site) const;
  /// Throws UsageError when out of range.
  std::size_t index(std::span<const int> coords) const;

  const std::vector<int>& origin() const noexcept { return origin_; }
  /// Throws UsageError when out of range.
  void set_origin(std::vector<int> origin);
  std::size_t origin_index() const { return index(origin_); }

  friend bool operator==(const Lattice& a, const Lattice& b) noexcept {
    return a.sides_ == b.sides_ && a.boundary_ == b.boundary_ && a.origin_ == b.origin_;
  }

 private:
  std::vector<int> sides_;
  Boundary boundary_;
  std::vector<int> origin_;
  std::size_t size_ = 0;
  std::vector<SiteIndex> neighbors_;
};

/// Convenience: a d=1 ring of n sites.
Lattice ring(int n);
/// Convenience: a d=1 window of n sites with frozen exteriors.
Lattice window(int n, Genotype low_exterior, Genotype high_exterior);

}  // namespace diploid
