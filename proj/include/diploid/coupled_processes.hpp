#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "diploid/arrows.hpp"
#include "diploid/gene_state.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/stats.hpp"
#include "diploid/sum_tree.hpp"

namespace diploid {

/// Heterozygote indicator per site (the annihilating branching process view).
struct BinaryLatticeState {
  Lattice lattice;
  std::vector<std::uint8_t> bits;
  double time = 0.0;

  /// Bit at a neighbor entry; a frozen exterior reads 1 iff it is AB.
  std::uint8_t at(Lattice::SiteIndex entry) const noexcept {
    return entry >= 0 ? bits[static_cast<std::size_t>(entry)]
                      : static_cast<std::uint8_t>(lattice.exterior(entry) == Genotype::AB);
  }
  std::size_t ones() const noexcept;
};

BinaryLatticeState project_to_abp(const LatticeState& state);

/// phi_ab times the number of 1-neighbors; the same in both directions.
double abp_flip_rate(const BinaryLatticeState& state, std::size_t site, double phi_ab);

/// Direct Gillespie sampler of the annihilating branching process.
class AbpEngine {
 public:
  AbpEngine(BinaryLatticeState state, double phi_ab, std::uint64_t seed);

  /// Returns false when the configuration is frozen or the next flip falls
  /// after `t_limit` (the clock is then set to `t_limit`).
  bool step(double t_limit = std::numeric_limits<double>::infinity());
  void advance(double t_end);

  const BinaryLatticeState& state() const noexcept { return state_; }
  bool frozen() const noexcept { return tree_.total() <= 0.0; }

 private:
  void refresh(std::size_t site);

  BinaryLatticeState state_;
  double phi_ab_;
  CounterRng rng_;
  SumTree tree_;
};

struct VoterRates {
  double phi_a = 0.0;
  double phi_b = 0.0;
};

/// phi_a = min(phi_aa, phi_ab), phi_b = max(phi_ba, phi_bb).
VoterRates voter_rates(const RateSet& rates) noexcept;

/// Gene configuration driven by a stream of arrows. `on_event` sees every
/// arrow after it has been applied, with a flag telling whether the target
/// gene changed.
class GeneArrowEngine {
 public:
  using Callback = std::function<void(const GeneLatticeState&, const ArrowEvent&, bool)>;

  GeneArrowEngine(GeneLatticeState state, const RateSet& rates, std::uint64_t seed,
                  ArrowScheme scheme = ArrowScheme::gene_based);

  void advance(double t_end, const Callback& on_event = {});
  const GeneLatticeState& state() const noexcept { return state_; }
  std::uint64_t arrows() const noexcept { return arrows_; }

 private:
  GeneLatticeState state_;
  std::unique_ptr<Lattice> lattice_;
  ArrowGenerator gen_;
  std::optional<ArrowEvent> pending_;
  std::uint64_t arrows_ = 0;
};

/// Run the gene engine to `t_end` with samples every `interval`, recording
/// genotype densities like the genotype engine does.
ObservableSeries run_gene_until(GeneArrowEngine& engine, double t_end, double interval);

/// True iff every gene where `zeta` carries A also carries A in `xi`.
bool dominates(const GeneLatticeState& xi, const GeneLatticeState& zeta) noexcept;

/// Copy of `xi` where each A gene is kept with probability `keep` and turned
/// to B otherwise; the result is dominated by `xi`.
GeneLatticeState thin_a_genes(const GeneLatticeState& xi, double keep, std::uint64_t seed);

struct CoupledRun {
  std::vector<double> times;
  std::vector<GeneLatticeState> xi;
  std::vector<GeneLatticeState> zeta;
  std::uint64_t events = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::optional<double> first_violation;

  bool domination_held() const noexcept { return violations == 0; }
};

/// Drive the gene process xi and the biased voter process zeta with one
/// coupled arrow realization on [0, T]. Domination is checked after every
/// arrow. Throws UsageError if it fails initially.
CoupledRun run_coupled(const Lattice& lattice, const RateSet& rates, const GeneLatticeState& xi0,
                       const GeneLatticeState& zeta0, double T, std::uint64_t seed,
                       double sample_interval = 1.0);

/// Genotype rates at `site` induced by the arrow streams of `scheme` acting on
/// the gene configuration, summed over every neighbor, slot pair and label.
RateMap arrow_induced_rates(const GeneLatticeState& genes, const RateSet& rates,
                            ArrowScheme scheme, std::size_t site);

enum class EquivalenceMode : std::uint8_t { coupled, statistical };

struct EquivalenceReport {
  EquivalenceMode mode = EquivalenceMode::coupled;
  bool exact = false;               // coupled mode verdict
  std::uint64_t configurations = 0; // configurations compared (coupled)
  std::uint64_t transitions = 0;    // genotype jumps replayed on the genotype engine
  double max_rate_error = 0.0;
  ChiSquareResult chi_square;       // statistical mode
  std::size_t replicates = 0;

  bool passed() const noexcept {
    return mode == EquivalenceMode::coupled ? exact : chi_square.within_3sigma;
  }
};

/// Coupled mode: runs the gene engine and at every visited configuration
/// compares the arrow-induced genotype rates with the genotype rates of the
/// projected state, and replays every projected jump on a genotype engine
/// state, checking it is an allowed transition. Statistical mode: compares
/// the distributions of (#AA, #AB) at T from both engines over `replicates`.
EquivalenceReport genotype_gene_equivalence_check(const RateSet& rates, const Lattice& lattice,
                                                  const InitialCondition& init, double T,
                                                  std::uint64_t seed, EquivalenceMode mode,
                                                  std::size_t replicates = 1000);

}  // namespace diploid
