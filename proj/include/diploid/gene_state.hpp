#pragma once

#include <cstddef>
#include <vector>

#include "diploid/lattice.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// Allele per (site, slot) pair: the gene-based view. Gene (x, g) lives at
/// index 2x + g.
struct GeneLatticeState {
  Lattice lattice;
  std::vector<Allele> genes;
  double time = 0.0;

  GeneLatticeState() = default;
  GeneLatticeState(Lattice lat, std::vector<Allele> alleles, double t = 0.0);

  Allele gene(std::size_t site, int slot) const noexcept { return genes[2 * site + slot]; }
  Allele& gene(std::size_t site, int slot) noexcept { return genes[2 * site + slot]; }

  /// Allele at a neighbor entry; exterior sentinels read the frozen genotype in
  /// canonical orientation.
  Allele at(Lattice::SiteIndex entry, int slot) const noexcept {
    return entry >= 0 ? gene(static_cast<std::size_t>(entry), slot)
                      : canonical_allele(lattice.exterior(entry), slot);
  }

  Genotype genotype(std::size_t site) const noexcept {
    return pair_alleles(gene(site, 0), gene(site, 1));
  }

  /// Unordered pairing of the two slots at every site.
  std::vector<Genotype> genotypes() const;
};

/// Gene state with AB sites holding A in slot 0.
GeneLatticeState genes_from_genotypes(const Lattice& lattice, const std::vector<Genotype>& sites,
                                      double time = 0.0);

/// Genotype state of a gene configuration, with a fresh random stream.
LatticeState project_genotypes(const GeneLatticeState& genes, std::uint64_t seed);

}  // namespace diploid
