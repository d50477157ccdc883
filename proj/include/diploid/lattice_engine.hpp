#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "diploid/lattice.hpp"
#include "diploid/rng.hpp"
#include "diploid/sum_tree.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// Genotype configuration of the lattice at one time, plus the random stream
/// that drives its evolution.
struct LatticeState {
  Lattice lattice;
  std::vector<Genotype> sites;
  double time = 0.0;
  CounterRng rng;

  LatticeState() = default;
  LatticeState(Lattice lat, std::vector<Genotype> genotypes, std::uint64_t seed, double t = 0.0);

  /// Genotype at a neighbor entry (site index or exterior sentinel).
  Genotype at(Lattice::SiteIndex entry) const noexcept {
    return entry >= 0 ? sites[static_cast<std::size_t>(entry)] : lattice.exterior(entry);
  }
};

/// Neighbor genotype counts (#aa, #ab, #bb) of a site.
std::array<int, 3> neighbor_counts(const LatticeState& state, std::size_t site);

/// Rates to each target genotype; the entry for the current genotype is 0.
struct RateMap {
  std::array<double, 3> to{0.0, 0.0, 0.0};

  double operator[](Genotype g) const noexcept { return to[index_of(g)]; }
  double total() const noexcept { return to[0] + to[1] + to[2]; }
  bool empty() const noexcept { return total() == 0.0; }
};

/// Single-site transition rates of the genotype process.
RateMap transition_rates(Genotype current, const std::array<int, 3>& neighbors,
                         const RateSet& rates) noexcept;

/// Throws UsageError when `site` is out of range.
RateMap site_transition_rates(const LatticeState& state, const RateSet& rates, std::size_t site);

struct TransitionEvent {
  double dt = 0.0;
  double time = 0.0;
  std::size_t site = 0;
  Genotype from = Genotype::AA;
  Genotype to = Genotype::AA;
};

enum class StepStatus : std::uint8_t { event, frozen, reached_limit };

struct StepOutcome {
  StepStatus status = StepStatus::frozen;
  TransitionEvent event;
};

/// Exact continuous-time sampler of the genotype process: per-site total rates
/// in a sum tree, one exponential clock for the whole lattice.
class GillespieEngine {
 public:
  GillespieEngine(LatticeState state, RateSet rates);

  /// Apply the next event. If the next event would fall after `t_limit`, the
  /// clock is set to `t_limit` and no event is applied (memorylessness makes
  /// this exact). A frozen configuration (total rate 0) returns `frozen`; the
  /// clock moves to `t_limit` if it is finite.
  StepOutcome step(double t_limit = std::numeric_limits<double>::infinity());

  /// Step until the clock reaches `t_end` or the configuration freezes.
  /// Returns the number of events applied.
  std::uint64_t advance(double t_end);

  const LatticeState& state() const noexcept { return state_; }
  const RateSet& rates() const noexcept { return rates_; }
  double total_rate() const noexcept { return tree_.total(); }
  bool frozen() const noexcept { return tree_.total() <= 0.0; }
  std::uint64_t events() const noexcept { return events_; }

  /// Overwrite one site and refresh the affected rates.
  void set_genotype(std::size_t site, Genotype g);

 private:
  void refresh(std::size_t site);
  void refresh_around(std::size_t site);

  LatticeState state_;
  RateSet rates_;
  SumTree tree_;
  std::uint64_t events_ = 0;
};

/// Timestamped table of observables. The first column is always "time".
struct ObservableSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
  /// Throws UsageError for an unknown column.
  std::size_t column(const std::string& name) const;
  friend bool operator==(const ObservableSeries&, const ObservableSeries&) = default;
};

/// What to record and how often. Samples are taken at t0 + k * interval for
/// k = 0, 1, ... while <= t_end.
struct Sampler {
  std::vector<std::string> columns;
  std::function<std::vector<double>(const LatticeState&)> probe;
  double interval = 1.0;
};

/// Genotype densities (u_aa, u_ab, u_bb) probe.
Sampler density_sampler(double interval);

/// Run the engine to `t_end`, recording samples. After the configuration
/// freezes, the remaining samples read the frozen configuration.
ObservableSeries run_until(GillespieEngine& engine, double t_end, const Sampler& sampler);

/// Callback form: `on_sample(state, sample_time)` at every scheduled time.
void run_until(GillespieEngine& engine, double t_end, double interval,
               const std::function<void(const LatticeState&, double)>& on_sample);

}  // namespace diploid
