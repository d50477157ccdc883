#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "diploid/arrows.hpp"
#include "diploid/coupled_processes.hpp"
#include "diploid/errors.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/observables.hpp"
#include "diploid/stats.hpp"
#include "diploid/verify/oracles.hpp"

using namespace diploid;

namespace {

double rate_of(const std::vector<ArrowStream>& s, ArrowLabel label) {
  double total = 0.0;
  for (const auto& x : s) {
    if (x.label == label) total += x.rate;
  }
  return total;
}

GeneLatticeState uniform_genes(const Lattice& lat, Allele a) {
  return GeneLatticeState(lat, std::vector<Allele>(2 * lat.size(), a));
}

}  // namespace

TEST_CASE("arrow generation window") {
  const Lattice lat = ring(10);
  const RateSet r = make_rates(1, 4, 3, 2);
  CHECK(generate_arrows(lat, r, ArrowScheme::gene_based, 0.0, 1).empty());
  CHECK_THROWS_AS(generate_arrows(lat, r, ArrowScheme::gene_based, -1.0, 1), UsageError);
  const auto ev = generate_arrows(lat, r, ArrowScheme::gene_based, 5.0, 1);
  CHECK(std::is_sorted(ev.begin(), ev.end(),
                       [](const ArrowEvent& a, const ArrowEvent& b) { return a.time < b.time; }));
  CHECK(ev == generate_arrows(lat, r, ArrowScheme::gene_based, 5.0, 1));
}

TEST_CASE("arrow counts have the Poisson mean of the streams") {
  const Lattice lat = ring(10);
  const RateSet r = make_rates(1, 4, 3, 2);
  const double T = 2.0;
  double per_pair = 0.0;
  for (const auto& s : arrow_streams(r, ArrowScheme::gene_based)) per_pair += s.rate;
  // 2d directed pairs into each site, four slot pairs each
  const double mean = T * lat.size() * 2 * 4 * per_pair;
  double total = 0.0;
  for (int k = 0; k < 100; ++k) {
    total += static_cast<double>(
        generate_arrows(lat, r, ArrowScheme::gene_based, T, derive_seed(5, k)).size());
  }
  CHECK(std::fabs(total - 100 * mean) < 3 * std::sqrt(100 * mean));
}

TEST_CASE("coupling table rows") {
  const RateSet r1 = make_rates(1, 3, 4, 2);  // aa <= ab, bb <= ba
  CHECK(coupling_case(r1) == 1);
  const auto t = coupling_table(r1);
  CHECK(rate_of(t, ArrowLabel::a) == 1.0);
  CHECK(rate_of(t, ArrowLabel::ab) == 2.0);
  CHECK(rate_of(t, ArrowLabel::b) == 2.0);
  CHECK(rate_of(t, ArrowLabel::ba) == 2.0);
  CHECK(coupling_case(make_rates(2, 2, 1, 1)) == 1);
  CHECK(coupling_case(make_rates(1, 2, 1, 2)) == 2);
  CHECK(coupling_case(make_rates(2, 1, 2, 1)) == 3);
  CHECK(coupling_case(make_rates(2, 1, 1, 2)) == 4);
}

TEST_CASE("coupling table bookkeeping in every sign case") {
  for (const RateSet& r : {make_rates(1, 3, 4, 2), make_rates(1, 3, 1, 2), make_rates(3, 1, 4, 2),
                           make_rates(3, 1, 1, 2)}) {
    const auto t = coupling_table(r);
    // read by xi: rate at which a source of type i with partner j writes i
    for (Allele s : {Allele::A, Allele::B}) {
      for (Allele p : {Allele::A, Allele::B}) {
        double xi = 0.0;
        for (const auto& row : t) {
          if (arrow_fires(row.label, s, p) && arrow_payload(row.label, s) == s) xi += row.rate;
        }
        CHECK(xi == doctest::Approx(r.birth_rate(s, p)));
      }
    }
    // read by zeta: voter arrows carry phi_a from a sources and phi_b from b sources
    const VoterRates v = voter_rates(r);
    double za = 0.0, zb = 0.0;
    for (const auto& row : t) {
      if (arrow_fires(row.voter_label, Allele::A, Allele::A) &&
          arrow_payload(row.voter_label, Allele::A) == Allele::A)
        za += row.rate;
      if (arrow_fires(row.voter_label, Allele::B, Allele::B) &&
          arrow_payload(row.voter_label, Allele::B) == Allele::B)
        zb += row.rate;
    }
    CHECK(za == doctest::Approx(v.phi_a));
    CHECK(zb == doctest::Approx(v.phi_b));
  }
}

TEST_CASE("arrow-induced genotype rates equal the genotype rates") {
  CounterRng rng(11);
  const Lattice lat({5, 4}, Boundary::torus());
  for (int rep = 0; rep < 20; ++rep) {
    const RateSet r = make_rates(rng.uniform() * 3, rng.uniform() * 3, rng.uniform() * 3,
                                 rng.uniform() * 3);
    std::vector<Allele> g(2 * lat.size());
    for (auto& a : g) a = rng.bernoulli(0.5) ? Allele::A : Allele::B;
    const GeneLatticeState genes(lat, g);
    const LatticeState s = project_genotypes(genes, 0);
    for (ArrowScheme scheme : {ArrowScheme::gene_based, ArrowScheme::coupled}) {
      for (std::size_t i = 0; i < lat.size(); ++i) {
        const RateMap a = arrow_induced_rates(genes, r, scheme, i);
        const auto n = neighbor_counts(s, i);
        const auto want = oracle::genotype_rates(s.sites[i], n[0], n[1], n[2], r);
        for (int t = 0; t < 3; ++t) CHECK(a.to[t] == doctest::Approx(want[t]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("projections") {
  const Lattice lat = ring(4);
  const LatticeState aa(lat, std::vector<Genotype>(4, Genotype::AA), 1);
  CHECK(project_to_abp(aa).ones() == 0);
  const LatticeState ab(lat, std::vector<Genotype>(4, Genotype::AB), 1);
  CHECK(project_to_abp(ab).ones() == 4);
  const LatticeState mix(lat, {Genotype::AB, Genotype::BB, Genotype::AB, Genotype::AA}, 1);
  const auto bits = project_to_abp(mix);
  for (std::size_t i = 0; i < 4; ++i) CHECK(bits.bits[i] == (mix.sites[i] == Genotype::AB));
}

TEST_CASE("abp flip rates") {
  const Lattice lat = ring(5);
  BinaryLatticeState s{lat, {0, 1, 0, 1, 0}, 0.0};
  CHECK(abp_flip_rate(s, 2, 1.0) == 2.0);
  CHECK(abp_flip_rate(s, 1, 1.0) == 0.0);
  CHECK(abp_flip_rate(s, 4, 1.0) == 1.0);
  // the rate does not depend on the state of the site itself
  BinaryLatticeState t = s;
  t.bits[2] = 1;
  CHECK(abp_flip_rate(t, 2, 1.0) == abp_flip_rate(s, 2, 1.0));
  CHECK_THROWS_AS(abp_flip_rate(s, 5, 1.0), UsageError);
}

TEST_CASE("voter rates") {
  const VoterRates v = voter_rates(make_rates(1, 4, 3, 2));
  CHECK(v.phi_a == 1.0);
  CHECK(v.phi_b == 3.0);
}

TEST_CASE("coupled runs keep domination in all four sign cases") {
  const Lattice lat = ring(20);
  for (const RateSet& r : {make_rates(1, 2, 2, 1), make_rates(1, 2, 1, 2), make_rates(2, 1, 2, 1),
                           make_rates(2, 1, 1, 2)}) {
    for (int k = 0; k < 10; ++k) {
      const auto xi = initial_genes(InitialCondition::bernoulli_genes(0.5), lat, derive_seed(k, 1));
      const auto zeta = thin_a_genes(xi, 0.5, derive_seed(k, 2));
      REQUIRE(dominates(xi, zeta));
      const CoupledRun run = run_coupled(lat, r, xi, zeta, 10.0, derive_seed(k, 3));
      CHECK(run.domination_held());
      CHECK(run.checks > 0);
      for (std::size_t j = 0; j < run.xi.size(); ++j) CHECK(dominates(run.xi[j], run.zeta[j]));
    }
  }
}

TEST_CASE("coupled run corner cases") {
  const Lattice lat = ring(20);
  const RateSet r = make_rates(1, 2, 2, 1);
  const auto xi = initial_genes(InitialCondition::bernoulli_genes(0.5), lat, 1);
  // zeta all b: domination is vacuous, but must persist
  const CoupledRun b = run_coupled(lat, r, xi, uniform_genes(lat, Allele::B), 5.0, 2);
  CHECK(b.domination_held());
  // both all a: nothing moves
  const CoupledRun a =
      run_coupled(lat, r, uniform_genes(lat, Allele::A), uniform_genes(lat, Allele::A), 5.0, 3);
  for (const auto& s : a.zeta) CHECK(s.genes == uniform_genes(lat, Allele::A).genes);
  for (const auto& s : a.xi) CHECK(s.genes == uniform_genes(lat, Allele::A).genes);
  // not dominated at the start
  CHECK_THROWS_AS(run_coupled(lat, r, uniform_genes(lat, Allele::B), uniform_genes(lat, Allele::A),
                              1.0, 4),
                  UsageError);
}

TEST_CASE("voter configurations all-a and all-b are absorbing") {
  const Lattice lat = ring(10);
  const RateSet r = make_rates(2, 1, 1, 2);
  for (Allele x : {Allele::A, Allele::B}) {
    GeneLatticeState z = uniform_genes(lat, x);
    for (const auto& e : generate_arrows(lat, r, ArrowScheme::coupled, 5.0, 9)) {
      CHECK_FALSE(apply_arrow(z, e, e.voter_label));
    }
  }
}

TEST_CASE("genotype and gene engines agree") {
  const Lattice lat = ring(20);
  const auto init = InitialCondition::bernoulli_genes(0.5);
  const RateSet r = make_rates(1, 4, 3, 2);
  const auto exact = genotype_gene_equivalence_check(r, lat, init, 5.0, 1, EquivalenceMode::coupled);
  CHECK(exact.passed());
  CHECK(exact.configurations > 100);
  const auto stat =
      genotype_gene_equivalence_check(r, lat, init, 5.0, 2, EquivalenceMode::statistical, 1000);
  CHECK(stat.passed());

  const auto frozen = genotype_gene_equivalence_check(
      r, lat, InitialCondition::all(Genotype::AA), 5.0, 3, EquivalenceMode::coupled);
  CHECK(frozen.exact);
}

TEST_CASE("heterozygote projection matches the direct ABP sampler") {
  const Lattice lat = ring(20);
  const RateSet r = make_rates(0, 1, 1, 0);
  Histogram from_genotypes, from_abp;
  for (int k = 0; k < 1000; ++k) {
    const auto start = initial_state(InitialCondition::abp_bernoulli(0.5), lat, derive_seed(1, k));
    GillespieEngine g(start, r);
    g.advance(3.0);
    ++from_genotypes[static_cast<std::int64_t>(project_to_abp(g.state()).ones())];
    AbpEngine a(project_to_abp(start), 1.0, derive_seed(2, k));
    a.advance(3.0);
    ++from_abp[static_cast<std::int64_t>(a.state().ones())];
  }
  CHECK(two_sample_chi_square(from_genotypes, from_abp).within_3sigma);
}
