#include "diploid/observables.hpp"

#include <cmath>
#include <queue>

#include "diploid/errors.hpp"

namespace diploid {

MeanFieldState densities(const LatticeState& state) {
  std::array<std::size_t, 3> c{0, 0, 0};
  for (Genotype g : state.sites) ++c[index_of(g)];
  const double n = static_cast<double>(state.sites.size());
  if (n == 0) return {};
  return {c[0] / n, c[1] / n, c[2] / n};
}

std::pair<EdgeRecord, GapRecord> edges_and_gaps(const LatticeState& state, EdgeView view) {
  const Lattice& lat = state.lattice;
  if (lat.dimension() != 1) throw UsageError("edges and gaps are defined in one dimension only");
  const long L = lat.sides()[0];
  const long o = lat.origin()[0];
  const auto& s = state.sites;
  EdgeRecord e;
  GapRecord g;
  e.time = g.time = state.time;

  if (view == EdgeView::abp_view) {
    long first = -1, last = -1;
    for (long i = 0; i < L; ++i) {
      if (s[i] == Genotype::AB) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first < 0) return {e, g};
    e.x_minus = first - o;
    e.x_plus = last - o;
    for (long i = last - 1; i >= 0; --i) {
      if (s[i] == Genotype::AB) {
        g.G = last - i - 1;
        g.G_zero = *g.G == 0;
        break;
      }
    }
    return {e, g};
  }

  // Half-line quantities need an all-AA left exterior.
  if (!lat.is_torus() && lat.boundary().low_exterior == Genotype::AA) {
    long f = 0;
    while (f < L && s[f] == Genotype::AA) ++f;
    e.r = f - 1 - o;
    e.r_clamped = f == L;
    long k = f;
    while (k < L && s[k] != Genotype::BB) ++k;
    if (k < L) {
      g.s = k - o;
    } else if (lat.boundary().high_exterior == Genotype::BB) {
      g.s = L - o;
    }
    if (g.s) {
      g.K = *g.s - *e.r - 1;
      g.K_class = static_cast<int>(std::min<long>(*g.K, 2));
    }
  }
  if (o >= 0 && o < L && s[o] == Genotype::AA) {
    long lo = o, hi = o;
    while (lo > 0 && s[lo - 1] == Genotype::AA) --lo;
    while (hi + 1 < L && s[hi + 1] == Genotype::AA) ++hi;
    e.z_minus = lo - o;
    e.z_plus = hi - o;
    e.z_clamped = lo == 0 || hi == L - 1;
  }
  return {e, g};
}

TaggedEdgeTracker::TaggedEdgeTracker(const BinaryLatticeState& state) {
  if (state.lattice.dimension() != 1) throw UsageError("edge tracking needs d = 1");
  const std::size_t n = state.bits.size();
  const std::size_t o = static_cast<std::size_t>(state.lattice.origin()[0]);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t x = o + k;
    if (x >= n) {
      if (!state.lattice.is_torus()) break;
      x -= n;
    }
    if (state.bits[x]) {
      position_ = x;
      run_right(state);
      displacement_ = 0;
      return;
    }
  }
}

std::optional<std::size_t> TaggedEdgeTracker::step(const BinaryLatticeState& s, std::size_t x,
                                                   int dir) const {
  const auto e = s.lattice.neighbors(x)[dir > 0 ? 1 : 0];
  if (e < 0) return std::nullopt;
  return static_cast<std::size_t>(e);
}

void TaggedEdgeTracker::run_right(const BinaryLatticeState& s) {
  for (std::size_t guard = 0; guard < s.bits.size(); ++guard) {
    auto nx = step(s, *position_, +1);
    if (!nx || !s.bits[*nx]) return;
    position_ = nx;
    ++displacement_;
  }
}

void TaggedEdgeTracker::fall_left(const BinaryLatticeState& s) {
  for (std::size_t guard = 0; guard < s.bits.size(); ++guard) {
    auto nx = step(s, *position_, -1);
    if (!nx) break;
    position_ = nx;
    --displacement_;
    if (s.bits[*nx]) return;
  }
  position_.reset();
}

void TaggedEdgeTracker::on_flip(const BinaryLatticeState& state, std::size_t site) {
  if (!position_) return;
  const std::size_t x = *position_;
  if (site == x && !state.bits[x]) {
    fall_left(state);
  } else if (auto nx = step(state, x, +1); nx && *nx == site && state.bits[site]) {
    run_right(state);
  }
}

std::optional<long> TaggedEdgeTracker::gap(const BinaryLatticeState& state) const {
  if (!position_) return std::nullopt;
  std::size_t x = *position_;
  for (long j = 0; j + 1 < static_cast<long>(state.bits.size()); ++j) {
    auto nx = step(state, x, -1);
    if (!nx) return std::nullopt;
    if (state.bits[*nx]) return j;
    x = *nx;
  }
  return std::nullopt;
}

bool TaggedEdgeTracker::gap_zero(const BinaryLatticeState& state) const {
  if (!position_) return false;
  auto nx = step(state, *position_, -1);
  return nx && *nx != *position_ && state.bits[*nx];
}

std::optional<bool> BlockGrid::occupied(int z, int n) const {
  auto it = cells.find({z, n});
  if (it == cells.end()) return std::nullopt;
  return it->second;
}

BlockGrid block_occupancy(const std::vector<BinaryLatticeState>& snapshots, int N, double T) {
  if (N < 4) throw UsageError("block half-width N must be at least 4");
  if (!(T > 0.0)) throw UsageError("block time step must be positive");
  BlockGrid grid;
  grid.N = N;
  grid.T = T;
  if (snapshots.empty()) return grid;
  const Lattice& lat = snapshots.front().lattice;
  const int d = lat.dimension();
  if (lat.sides()[0] < 3 * N) throw UsageError("lattice is shorter than 3N along axis 0");
  const int q = N / 4;
  for (int axis = 1; axis < d; ++axis) {
    if (lat.sides()[axis] < 2 * q) throw UsageError("lattice too thin for the block cubes");
  }
  const int o0 = lat.origin()[0];
  // Largest |z| whose cube lies inside the window.
  int z_max = 0;
  while (o0 - (z_max + 1) * N - q >= 0 && o0 + (z_max + 1) * N + q - 1 < lat.sides()[0]) ++z_max;
  grid.z_max = z_max;

  for (std::size_t n = 0; n < snapshots.size(); ++n) {
    const auto& snap = snapshots[n];
    if (std::abs(snap.time - static_cast<double>(n) * T) > 1e-9 * std::max(1.0, snap.time)) {
      throw UsageError("snapshot " + std::to_string(n) + " is not at time n T");
    }
    for (int z = -z_max; z <= z_max; ++z) {
      if ((z + static_cast<int>(n)) % 2 != 0) continue;
      bool any = false;
      for (std::size_t site = 0; site < snap.bits.size() && !any; ++site) {
        if (!snap.bits[site]) continue;
        const auto c = lat.coordinates(site);
        bool inside = true;
        for (int axis = 0; axis < d && inside; ++axis) {
          const int centre = lat.origin()[axis] + (axis == 0 ? z * N : 0);
          inside = c[axis] >= centre - q && c[axis] < centre + q;
        }
        any = inside;
      }
      grid.cells[{z, static_cast<int>(n)}] = any;
    }
  }
  return grid;
}

std::optional<bool> propagates(const BlockGrid& grid) {
  auto root = grid.occupied(0, 0);
  auto left = grid.occupied(-1, 1);
  auto right = grid.occupied(1, 1);
  if (!root || !left || !right) return std::nullopt;
  return *root && *left && *right;
}

double mean_cluster_size(const LatticeState& state) {
  const std::size_t n = state.sites.size();
  if (n == 0) return 0.0;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> stack;
  std::size_t clusters = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++clusters;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (auto e : state.lattice.neighbors(x)) {
        if (e < 0) continue;
        const auto y = static_cast<std::size_t>(e);
        if (!seen[y] && state.sites[y] == state.sites[x]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return static_cast<double>(n) / static_cast<double>(clusters);
}

ObservableSeries cluster_size_series(const std::vector<LatticeState>& trajectory) {
  ObservableSeries s;
  s.columns = {"time", "mean_cluster_size"};
  for (const auto& st : trajectory) s.rows.push_back({st.time, mean_cluster_size(st)});
  return s;
}

}  // namespace diploid
