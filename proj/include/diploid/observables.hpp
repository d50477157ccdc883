#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diploid/coupled_processes.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/mean_field.hpp"

namespace diploid {

/// Genotype fractions of a configuration.
MeanFieldState densities(const LatticeState& state);

/// Positions are axis-0 coordinates relative to the lattice origin. Missing
/// values mean the quantity is undefined for this configuration; `*_clamped`
/// flags mark values cut off by the finite window.
struct EdgeRecord {
  double time = 0.0;
  std::optional<long> r;        // all sites <= r are AA
  bool r_clamped = false;
  std::optional<long> z_minus;  // maximal AA run through the origin
  std::optional<long> z_plus;
  bool z_clamped = false;
  std::optional<long> x_minus;  // leftmost / rightmost heterozygote
  std::optional<long> x_plus;
};

struct GapRecord {
  double time = 0.0;
  std::optional<long> G;        // right-edge gap of the heterozygote view
  std::optional<long> s;        // first BB at or right of r + 1
  std::optional<long> K;        // s - r - 1
  std::optional<bool> G_zero;
  std::optional<int> K_class;   // 0, 1, or 2 for K >= 2
};

enum class EdgeView : std::uint8_t { abp_view, genotype_view };

/// Scan a one-dimensional configuration. Throws UsageError for d != 1.
std::pair<EdgeRecord, GapRecord> edges_and_gaps(const LatticeState& state, EdgeView view);

/// Heterozygote edge X_t in one dimension, moving in the + direction: X is
/// the right end of its block of 1s; when X+1 becomes 1 it runs to the new
/// block end, when the particle at X dies it falls back to the nearest 1 on
/// its left. The unwrapped displacement is kept for speed estimates on rings.
class TaggedEdgeTracker {
 public:
  TaggedEdgeTracker() = default;
  /// Starts at the end of the first block found scanning right from the origin.
  explicit TaggedEdgeTracker(const BinaryLatticeState& state);

  /// Call after site `site` flipped in `state`.
  void on_flip(const BinaryLatticeState& state, std::size_t site);

  bool alive() const noexcept { return position_.has_value(); }
  std::optional<std::size_t> position() const noexcept { return position_; }
  long displacement() const noexcept { return displacement_; }
  /// Distance to the next 1 on the left minus one (empty when it is alone).
  std::optional<long> gap(const BinaryLatticeState& state) const;
  bool gap_zero(const BinaryLatticeState& state) const;

 private:
  std::optional<std::size_t> step(const BinaryLatticeState& s, std::size_t x, int dir) const;
  void run_right(const BinaryLatticeState& s);
  void fall_left(const BinaryLatticeState& s);

  std::optional<std::size_t> position_;
  long displacement_ = 0;
};

/// Occupancy of the oriented-percolation blocks: bit (z, n) is 1 iff some
/// site of N z e_1 + [-N/4, N/4)^d is heterozygous at time n T. Only cells
/// with z + n even are kept.
struct BlockGrid {
  int N = 0;
  double T = 0.0;
  int z_max = 0;  // |z| <= z_max fits in the lattice
  std::map<std::pair<int, int>, bool> cells;

  std::optional<bool> occupied(int z, int n) const;
};

/// `snapshots[n]` is the configuration at time n T. Throws UsageError when the
/// lattice is shorter than 3N along axis 0 or a snapshot time is off-grid.
BlockGrid block_occupancy(const std::vector<BinaryLatticeState>& snapshots, int N, double T);

/// Whether block (0, 0) is occupied and both (-1, 1) and (1, 1) are.
std::optional<bool> propagates(const BlockGrid& grid);

/// Mean size of maximal same-genotype clusters (von Neumann adjacency, wrap
/// on a torus): sites / number of clusters.
double mean_cluster_size(const LatticeState& state);

/// Mean cluster size at each snapshot, keyed by snapshot time.
ObservableSeries cluster_size_series(const std::vector<LatticeState>& trajectory);

}  // namespace diploid
