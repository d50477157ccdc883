#include "diploid/gene_state.hpp"

#include "diploid/errors.hpp"

namespace diploid {

GeneLatticeState::GeneLatticeState(Lattice lat, std::vector<Allele> alleles, double t)
    : lattice(std::move(lat)), genes(std::move(alleles)), time(t) {
  if (genes.size() != 2 * lattice.size()) {
    throw UsageError("gene configuration must hold two alleles per site");
  }
}

std::vector<Genotype> GeneLatticeState::genotypes() const {
  std::vector<Genotype> out(lattice.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = genotype(s);
  return out;
}

GeneLatticeState genes_from_genotypes(const Lattice& lattice, const std::vector<Genotype>& sites,
                                      double time) {
  if (sites.size() != lattice.size()) {
    throw UsageError("configuration size does not match the lattice");
  }
  std::vector<Allele> genes(2 * sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    genes[2 * s] = canonical_allele(sites[s], 0);
    genes[2 * s + 1] = canonical_allele(sites[s], 1);
  }
  return GeneLatticeState(lattice, std::move(genes), time);
}

LatticeState project_genotypes(const GeneLatticeState& genes, std::uint64_t seed) {
  return LatticeState(genes.lattice, genes.genotypes(), seed, genes.time);
}

}  // namespace diploid
