#include "diploid/initial_condition.hpp"

#include <algorithm>
#include <cmath>

#include "diploid/errors.hpp"
#include "diploid/rng.hpp"

namespace diploid {

namespace {

constexpr std::uint64_t kInitialStream = 0x1c0ffee5eedULL;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("probability must lie in [0, 1]");
}

std::vector<int> relative(const Lattice& lattice, std::size_t site) {
  auto c = lattice.coordinates(site);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= lattice.origin()[i];
  return c;
}

}  // namespace

InitialCondition InitialCondition::all(Genotype g) {
  InitialCondition ic;
  ic.kind = InitialKind::all;
  ic.genotype = g;
  return ic;
}

InitialCondition InitialCondition::bernoulli_genes(double p) {
  check_probability(p);
  InitialCondition ic;
  ic.kind = InitialKind::bernoulli_genes;
  ic.p = p;
  return ic;
}

InitialCondition InitialCondition::abp_bernoulli(double p, Genotype background) {
  check_probability(p);
  InitialCondition ic;
  ic.kind = InitialKind::abp_bernoulli;
  ic.p = p;
  ic.background = background;
  return ic;
}

InitialCondition InitialCondition::half_line_aa(Genotype fill) {
  InitialCondition ic;
  ic.kind = InitialKind::half_line_aa;
  ic.fill = fill;
  return ic;
}

InitialCondition InitialCondition::cube_aa(int N, Genotype fill) {
  if (N < 0) throw UsageError("cube half-width must be non-negative");
  InitialCondition ic;
  ic.kind = InitialKind::cube_aa;
  ic.N = N;
  ic.fill = fill;
  return ic;
}

InitialCondition InitialCondition::single(Genotype g, std::vector<int> site, Genotype background) {
  InitialCondition ic;
  ic.kind = InitialKind::single;
  ic.genotype = g;
  ic.site = std::move(site);
  ic.background = background;
  return ic;
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::all:
      return "all";
    case InitialKind::bernoulli_genes:
      return "bernoulli_genes";
    case InitialKind::abp_bernoulli:
      return "abp_bernoulli";
    case InitialKind::half_line_aa:
      return "half_line_aa";
    case InitialKind::cube_aa:
      return "cube_aa";
    case InitialKind::single:
      return "single";
  }
  return "?";
}

InitialKind parse_initial_kind(const std::string& name) {
  for (auto k : {InitialKind::all, InitialKind::bernoulli_genes, InitialKind::abp_bernoulli,
                 InitialKind::half_line_aa, InitialKind::cube_aa, InitialKind::single}) {
    if (to_string(k) == name) return k;
  }
  throw UsageError("unknown initial condition '" + name + "'");
}

GeneLatticeState initial_genes(const InitialCondition& ic, const Lattice& lattice,
                               std::uint64_t seed) {
  const std::size_t n = lattice.size();
  CounterRng rng(derive_seed(seed, kInitialStream));
  std::vector<Genotype> sites(n, Genotype::AA);

  switch (ic.kind) {
    case InitialKind::all:
      std::fill(sites.begin(), sites.end(), ic.genotype);
      break;
    case InitialKind::bernoulli_genes: {
      check_probability(ic.p);
      std::vector<Allele> genes(2 * n);
      for (auto& g : genes) g = rng.bernoulli(ic.p) ? Allele::A : Allele::B;
      return GeneLatticeState(lattice, std::move(genes));
    }
    case InitialKind::abp_bernoulli:
      check_probability(ic.p);
      for (auto& s : sites) s = rng.bernoulli(ic.p) ? Genotype::AB : ic.background;
      break;
    case InitialKind::half_line_aa:
      for (std::size_t s = 0; s < n; ++s) {
        sites[s] = relative(lattice, s)[0] <= 0 ? Genotype::AA : ic.fill;
      }
      break;
    case InitialKind::cube_aa: {
      for (int axis = 0; axis < lattice.dimension(); ++axis) {
        const int o = lattice.origin()[axis];
        if (o - ic.N < 0 || o + ic.N >= lattice.sides()[axis]) {
          throw UsageError("cube [-" + std::to_string(ic.N) + ", " + std::to_string(ic.N) +
                           "]^d does not fit in the lattice");
        }
      }
      for (std::size_t s = 0; s < n; ++s) {
        bool inside = true;
        for (int c : relative(lattice, s)) inside = inside && std::abs(c) <= ic.N;
        sites[s] = inside ? Genotype::AA : ic.fill;
      }
      break;
    }
    case InitialKind::single: {
      std::fill(sites.begin(), sites.end(), ic.background);
      std::vector<int> c = lattice.origin();
      if (!ic.site.empty()) {
        if (ic.site.size() != c.size()) throw UsageError("site dimension mismatch");
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += ic.site[i];
      }
      sites[lattice.index(c)] = ic.genotype;
      break;
    }
  }
  return genes_from_genotypes(lattice, sites);
}

LatticeState initial_state(const InitialCondition& ic, const Lattice& lattice, std::uint64_t seed) {
  return project_genotypes(initial_genes(ic, lattice, seed), seed);
}

}  // namespace diploid
