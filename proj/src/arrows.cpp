#include "diploid/arrows.hpp"

#include <algorithm>

#include "diploid/errors.hpp"

namespace diploid {

std::string_view to_string(ArrowLabel label) noexcept {
  switch (label) {
    case ArrowLabel::none:
      return "none";
    case ArrowLabel::a:
      return "a";
    case ArrowLabel::b:
      return "b";
    case ArrowLabel::aa:
      return "aa";
    case ArrowLabel::ab:
      return "ab";
    case ArrowLabel::ba:
      return "ba";
    case ArrowLabel::bb:
      return "bb";
    case ArrowLabel::voter:
      return "voter";
  }
  return "?";
}

bool arrow_fires(ArrowLabel label, Allele source, Allele partner) noexcept {
  using enum Allele;
  switch (label) {
    case ArrowLabel::none:
      return false;
    case ArrowLabel::voter:
      return true;
    case ArrowLabel::a:
      return source == A;
    case ArrowLabel::b:
      return source == B;
    case ArrowLabel::aa:
      return source == A && partner == A;
    case ArrowLabel::ab:
      return source == A && partner == B;
    case ArrowLabel::ba:
      return source == B && partner == A;
    case ArrowLabel::bb:
      return source == B && partner == B;
  }
  return false;
}

Allele arrow_payload(ArrowLabel label, Allele source) noexcept {
  switch (label) {
    case ArrowLabel::a:
    case ArrowLabel::aa:
    case ArrowLabel::ab:
      return Allele::A;
    case ArrowLabel::b:
    case ArrowLabel::ba:
    case ArrowLabel::bb:
      return Allele::B;
    default:
      return source;
  }
}

int coupling_case(const RateSet& r) noexcept {
  const bool a_low = r.phi_aa <= r.phi_ab;
  const bool b_low = r.phi_bb <= r.phi_ba;
  if (a_low) return b_low ? 1 : 2;
  return b_low ? 3 : 4;
}

std::vector<ArrowStream> coupling_table(const RateSet& r) {
  r.validate();
  using L = ArrowLabel;
  std::vector<ArrowStream> rows;
  switch (coupling_case(r)) {
    case 1:
      rows = {{L::a, L::a, r.phi_aa},
              {L::ab, L::none, r.phi_ab - r.phi_aa},
              {L::b, L::b, r.phi_bb},
              {L::ba, L::b, r.phi_ba - r.phi_bb}};
      break;
    case 2:
      rows = {{L::a, L::a, r.phi_aa},
              {L::ab, L::none, r.phi_ab - r.phi_aa},
              {L::b, L::b, r.phi_ba},
              {L::bb, L::b, r.phi_bb - r.phi_ba}};
      break;
    case 3:
      rows = {{L::a, L::a, r.phi_ab},
              {L::aa, L::none, r.phi_aa - r.phi_ab},
              {L::b, L::b, r.phi_bb},
              {L::ba, L::b, r.phi_ba - r.phi_bb}};
      break;
    default:
      rows = {{L::a, L::a, r.phi_ab},
              {L::aa, L::none, r.phi_aa - r.phi_ab},
              {L::b, L::b, r.phi_ba},
              {L::bb, L::b, r.phi_bb - r.phi_ba}};
      break;
  }
  return rows;
}

std::vector<ArrowStream> arrow_streams(const RateSet& r, ArrowScheme scheme) {
  r.validate();
  std::vector<ArrowStream> streams;
  if (scheme == ArrowScheme::gene_based) {
    streams = {{ArrowLabel::aa, ArrowLabel::none, r.phi_aa},
               {ArrowLabel::ab, ArrowLabel::none, r.phi_ab},
               {ArrowLabel::ba, ArrowLabel::none, r.phi_ba},
               {ArrowLabel::bb, ArrowLabel::none, r.phi_bb}};
  } else {
    streams = coupling_table(r);
  }
  for (auto& s : streams) s.rate *= 0.5;
  return streams;
}

ArrowGenerator::ArrowGenerator(const Lattice& lattice, const RateSet& rates, ArrowScheme scheme,
                               std::uint64_t seed, double t0)
    : lattice_(&lattice), streams_(arrow_streams(rates, scheme)), time_(t0), rng_(seed) {
  for (const auto& s : streams_) stream_sum_ += s.rate;
  // Four (source slot, target slot) combinations per directed pair.
  total_rate_ = static_cast<double>(lattice.size()) * lattice.neighbor_count() * 4.0 * stream_sum_;
}

ArrowEvent ArrowGenerator::next() {
  ArrowEvent e;
  time_ += rng_.exponential(total_rate_);
  e.time = time_;
  e.target = static_cast<std::uint32_t>(rng_.below(lattice_->size()));
  const auto dir = rng_.below(static_cast<std::uint64_t>(lattice_->neighbor_count()));
  e.source = lattice_->neighbors(e.target)[dir];
  const auto slots = rng_.below(4);
  e.source_slot = static_cast<std::uint8_t>(slots & 1U);
  e.target_slot = static_cast<std::uint8_t>(slots >> 1);
  double u = rng_.uniform() * stream_sum_;
  const ArrowStream* pick = nullptr;
  for (const auto& s : streams_) {
    if (s.rate <= 0.0) continue;
    pick = &s;
    if (u < s.rate) break;
    u -= s.rate;
  }
  e.label = pick->label;
  e.voter_label = pick->voter_label;
  return e;
}

std::vector<ArrowEvent> generate_arrows(const Lattice& lattice, const RateSet& rates,
                                        ArrowScheme scheme, double T, std::uint64_t seed) {
  if (!(T >= 0.0)) throw UsageError("arrow window length must be non-negative");
  std::vector<ArrowEvent> out;
  if (T == 0.0 || lattice.size() == 0) return out;
  ArrowGenerator gen(lattice, rates, scheme, seed);
  for (;;) {
    ArrowEvent e = gen.next();
    if (e.time > T) break;
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const ArrowEvent& x, const ArrowEvent& y) {
    if (x.time != y.time) return x.time < y.time;
    if (x.source != y.source) return x.source < y.source;
    return x.source_slot < y.source_slot;
  });
  return out;
}

bool apply_arrow(GeneLatticeState& state, const ArrowEvent& event, ArrowLabel label) {
  const Allele src = state.at(event.source, event.source_slot);
  const Allele partner = state.at(event.source, 1 - event.source_slot);
  if (!arrow_fires(label, src, partner)) return false;
  Allele& dst = state.gene(event.target, event.target_slot);
  const Allele value = arrow_payload(label, src);
  if (dst == value) return false;
  dst = value;
  return true;
}

}  // namespace diploid
