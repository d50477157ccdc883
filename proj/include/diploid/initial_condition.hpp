#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diploid/gene_state.hpp"
#include "diploid/lattice.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/types.hpp"

namespace diploid {

enum class InitialKind : std::uint8_t {
  all,              // every site `genotype`
  bernoulli_genes,  // each gene slot A with probability p, independently
  abp_bernoulli,    // each site AB with probability p, else `background`
  half_line_aa,     // axis-0 coordinate <= 0 is AA, the rest `fill`
  cube_aa,          // [-N, N]^d around the origin is AA, the rest `fill`
  single,           // `genotype` at `site` (origin-relative), the rest `background`
};

/// Coordinates in `site` are relative to the lattice origin.
struct InitialCondition {
  InitialKind kind = InitialKind::all;
  Genotype genotype = Genotype::AA;
  Genotype fill = Genotype::BB;
  Genotype background = Genotype::AA;
  double p = 0.5;
  int N = 0;
  std::vector<int> site;

  static InitialCondition all(Genotype g);
  static InitialCondition bernoulli_genes(double p);
  static InitialCondition abp_bernoulli(double p, Genotype background = Genotype::AA);
  static InitialCondition half_line_aa(Genotype fill = Genotype::BB);
  static InitialCondition cube_aa(int N, Genotype fill = Genotype::BB);
  /// Empty `site` means the origin.
  static InitialCondition single(Genotype g, std::vector<int> site = {},
                                 Genotype background = Genotype::AA);

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

std::string to_string(InitialKind kind);
/// Throws UsageError for an unknown name.
InitialKind parse_initial_kind(const std::string& name);

/// Gene configuration. Random kinds draw from a stream derived from `seed`.
GeneLatticeState initial_genes(const InitialCondition& ic, const Lattice& lattice,
                               std::uint64_t seed);

/// Genotype configuration; its engine stream is seeded with `seed`.
LatticeState initial_state(const InitialCondition& ic, const Lattice& lattice, std::uint64_t seed);

}  // namespace diploid
