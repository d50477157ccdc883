#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "diploid/gene_state.hpp"
#include "diploid/lattice.hpp"
#include "diploid/rng.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// Arrow types of the graphical representation.
///
///  - `aa`, `ab`, `ba`, `bb`: fires when the source gene is the first letter and
///    its partner gene is the second; the target becomes the first letter.
///  - `a`, `b`: fires whenever the source gene is that letter (superposition of
///    the two labels above with that source).
///  - `voter`: unconditional copy of the source gene.
///  - `none`: no effect (used when an event means nothing to one process).
enum class ArrowLabel : std::uint8_t { none, a, b, aa, ab, ba, bb, voter };

std::string_view to_string(ArrowLabel label) noexcept;

/// Whether an arrow with `label` leaving a gene `source` whose partner is
/// `partner` writes into its target, and the allele it writes.
bool arrow_fires(ArrowLabel label, Allele source, Allele partner) noexcept;
Allele arrow_payload(ArrowLabel label, Allele source) noexcept;

enum class ArrowScheme : std::uint8_t { gene_based, coupled };

/// One arrow from gene (source, source_slot) to gene (target, target_slot).
/// `label` drives the gene-based process; `voter_label` is the reading of the
/// same event by the biased voter model (coupled scheme only).
struct ArrowEvent {
  double time = 0.0;
  Lattice::SiteIndex source = 0;
  std::uint8_t source_slot = 0;
  std::uint32_t target = 0;
  std::uint8_t target_slot = 0;
  ArrowLabel label = ArrowLabel::none;
  ArrowLabel voter_label = ArrowLabel::none;

  friend bool operator==(const ArrowEvent&, const ArrowEvent&) = default;
};

/// One independent Poisson stream per (directed neighbor pair, source slot,
/// target slot) carries each of these at `rate`.
struct ArrowStream {
  ArrowLabel label;
  ArrowLabel voter_label;
  double rate;
};

/// Sign case of (phi_aa - phi_ab, phi_bb - phi_ba), numbered as the coupling
/// table rows: 1 = (<=, <=), 2 = (<=, >=), 3 = (>=, <=), 4 = (>=, >=). Ties
/// resolve to the lower-numbered case.
int coupling_case(const RateSet& rates) noexcept;

/// Coupling table rows for the sign case of `rates`, at their full rates
/// (before the per-slot-pair halving). Rows with rate 0 are kept.
std::vector<ArrowStream> coupling_table(const RateSet& rates);

/// Per-stream rates actually used for `scheme`. Every rate is halved so that
/// the induced genotype process has exactly the single-site genotype rates.
std::vector<ArrowStream> arrow_streams(const RateSet& rates, ArrowScheme scheme);

/// Superposition sampler of all arrow streams on a lattice: one exponential
/// clock at the total rate, then a uniformly chosen (target, direction, slots)
/// and a label chosen proportionally to its stream rate. Equal in law to the
/// independent streams. Arrows only point into the lattice; sources may be
/// frozen exterior sites.
class ArrowGenerator {
 public:
  ArrowGenerator(const Lattice& lattice, const RateSet& rates, ArrowScheme scheme,
                 std::uint64_t seed, double t0 = 0.0);

  ArrowEvent next();
  double total_rate() const noexcept { return total_rate_; }
  double time() const noexcept { return time_; }

 private:
  const Lattice* lattice_;
  std::vector<ArrowStream> streams_;
  double stream_sum_ = 0.0;
  double total_rate_ = 0.0;
  double time_;
  CounterRng rng_;
};

/// All arrows in [0, T], strictly time ordered (equal floating times, which
/// have probability zero, are ordered by source site then source slot).
/// T = 0 gives an empty list; T < 0 throws UsageError.
std::vector<ArrowEvent> generate_arrows(const Lattice& lattice, const RateSet& rates,
                                        ArrowScheme scheme, double T, std::uint64_t seed);

/// Apply an arrow under `label` to a gene configuration. Returns true when the
/// target gene changed.
bool apply_arrow(GeneLatticeState& state, const ArrowEvent& event, ArrowLabel label);

}  // namespace diploid
