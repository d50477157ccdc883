#include <doctest.h>

#include <cmath>
#include <map>

#include "diploid/errors.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/lattice.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/observables.hpp"
#include "diploid/sum_tree.hpp"
#include "diploid/verify/oracles.hpp"

using namespace diploid;

namespace {

LatticeState line(std::vector<Genotype> g, std::uint64_t seed = 1) {
  const int n = static_cast<int>(g.size());
  return LatticeState(ring(n), std::move(g), seed);
}

std::vector<Genotype> random_sites(std::size_t n, CounterRng& rng) {
  std::vector<Genotype> s(n);
  for (auto& g : s) g = static_cast<Genotype>(rng.below(3));
  return s;
}

}  // namespace

TEST_CASE("lattice neighbors on a ring and a window") {
  const Lattice r = ring(5);
  CHECK(r.neighbors(0)[0] == 4);
  CHECK(r.neighbors(0)[1] == 1);
  CHECK(r.origin_index() == 2);

  const Lattice w = window(4, Genotype::AA, Genotype::BB);
  CHECK(w.neighbors(0)[0] == Lattice::kLowExterior);
  CHECK(w.neighbors(3)[1] == Lattice::kHighExterior);
  CHECK(w.exterior(Lattice::kLowExterior) == Genotype::AA);
  CHECK(w.exterior(Lattice::kHighExterior) == Genotype::BB);

  const Lattice sq({3, 4}, Boundary::torus());
  CHECK(sq.size() == 12);
  CHECK(sq.neighbor_count() == 4);
  const std::vector<int> c{2, 3};
  CHECK(sq.coordinates(sq.index(c)) == c);
  CHECK_THROWS_AS(sq.index(std::vector<int>{3, 0}), UsageError);
}

TEST_CASE("site rates: worked example and absorbing site") {
  // AA with left BB and right AB under (1,4,3,2): 2*2*1 + 3*1 = 7
  const LatticeState s = line({Genotype::BB, Genotype::AA, Genotype::AB});
  const RateMap m = site_transition_rates(s, make_rates(1, 4, 3, 2), 1);
  CHECK(m[Genotype::AB] == 7.0);
  CHECK(m[Genotype::AA] == 0.0);
  CHECK(m[Genotype::BB] == 0.0);

  const LatticeState aa = line({Genotype::AA, Genotype::AA, Genotype::AA});
  CHECK(site_transition_rates(aa, make_rates(1, 4, 3, 2), 1).empty());
  CHECK_THROWS_AS(site_transition_rates(aa, make_rates(1, 4, 3, 2), 3), UsageError);
}

TEST_CASE("heterozygote with k heterozygous neighbors flips at total rate k") {
  const RateSet r = make_rates(0, 1, 1, 0);
  for (int k = 0; k <= 2; ++k) {
    std::vector<Genotype> g{Genotype::AA, Genotype::AB, Genotype::AA};
    if (k >= 1) g[0] = Genotype::AB;
    if (k >= 2) g[2] = Genotype::AB;
    const RateMap m = site_transition_rates(line(g), r, 1);
    CHECK(m[Genotype::AA] == doctest::Approx(k / 2.0));
    CHECK(m[Genotype::BB] == doctest::Approx(k / 2.0));
    CHECK(m.total() == doctest::Approx(k));
  }
}

TEST_CASE("site rates match the hand enumeration on all 27 three-site rings") {
  const RateSet r = make_rates(1.5, 4, 3, 2.25);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const std::vector<Genotype> g{static_cast<Genotype>(a), static_cast<Genotype>(b),
                                      static_cast<Genotype>(c)};
        const LatticeState s = line(g);
        int n[3] = {0, 0, 0};
        ++n[a];
        ++n[c];
        const auto want = oracle::genotype_rates(g[1], n[0], n[1], n[2], r);
        const RateMap got = site_transition_rates(s, r, 1);
        for (int t = 0; t < 3; ++t) CHECK(got.to[t] == want[t]);
      }
    }
  }
}

TEST_CASE("allele swap symmetry and rate homogeneity") {
  CounterRng rng(42);
  const Lattice lat({6, 5}, Boundary::torus());
  for (int rep = 0; rep < 20; ++rep) {
    const RateSet r = make_rates(rng.uniform() * 3, rng.uniform() * 3, rng.uniform() * 3,
                                 rng.uniform() * 3);
    const auto sites = random_sites(lat.size(), rng);
    std::vector<Genotype> swapped(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) swapped[i] = swap_alleles(sites[i]);
    const LatticeState s(lat, sites, 1), t(lat, swapped, 1);
    const double lambda = 0.5 + rng.uniform() * 4;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const RateMap m = site_transition_rates(s, r, i);
      const RateMap ms = site_transition_rates(t, r.swapped(), i);
      const RateMap ml = site_transition_rates(s, r.scaled(lambda), i);
      for (Genotype g : kGenotypes) {
        CHECK(m[g] == ms[swap_alleles(g)]);
        CHECK(ml[g] == doctest::Approx(lambda * m[g]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("sum tree samples proportionally and never picks zero weights") {
  SumTree t(5);
  t.set(0, 1.0);
  t.set(2, 3.0);
  CHECK(t.total() == 4.0);
  CHECK(t.sample(0.5) == 0);
  CHECK(t.sample(1.5) == 2);
  CHECK(t.sample(3.999) == 2);
  t.set(0, 0.0);
  t.set(2, 0.0);
  CHECK(t.total() == 0.0);
}

TEST_CASE("all-AA torus is frozen") {
  const Lattice lat({4, 4}, Boundary::torus());
  GillespieEngine e(initial_state(InitialCondition::all(Genotype::AA), lat, 1),
                    make_rates(1, 1, 1, 1));
  CHECK(e.frozen());
  CHECK(e.step().status == StepStatus::frozen);
  const ObservableSeries s = run_until(e, 10.0, density_sampler(1.0));
  CHECK(s.size() == 11);
  for (const auto& row : s.rows) CHECK(row[1] == 1.0);
  CHECK(e.events() == 0);
}

TEST_CASE("first step from a single heterozygote") {
  // phi_aa = 0: the centre cannot return to AA (its neighbors are AA), so the
  // only moves are the two neighbors turning AB, at rate 1 each
  const RateSet r = make_rates(0, 1, 1, 0);
  std::map<std::pair<std::size_t, int>, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    std::vector<Genotype> g(7, Genotype::AA);
    g[3] = Genotype::AB;
    GillespieEngine e(LatticeState(ring(7), g, derive_seed(9, i)), r);
    CHECK(e.total_rate() == 2.0);
    const auto out = e.step();
    REQUIRE(out.status == StepStatus::event);
    ++counts[{out.event.site, index_of(out.event.to)}];
  }
  REQUIRE(counts.size() == 2);
  const double p = 0.5, sd = std::sqrt(n * p * (1 - p));
  CHECK(std::fabs(counts[{2, 1}] - n * p) < 3 * sd);
  CHECK(std::fabs(counts[{4, 1}] - n * p) < 3 * sd);
}

TEST_CASE("first step frequencies follow the site rates") {
  // centre AB between AA and AB under (1,4,3,2): left AA->AB at 3, centre AB->AA at
  // 1 + 2 = 3 and AB->BB at 1.5, right AB->AA at 2 and AB->BB at 1.5
  const RateSet r = make_rates(1, 4, 3, 2);
  const std::vector<Genotype> start{Genotype::AA, Genotype::AB, Genotype::AB};
  const LatticeState s0(window(3, Genotype::BB, Genotype::AA), start, 0);
  std::map<std::pair<std::size_t, int>, double> rate;
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const RateMap m = site_transition_rates(s0, r, i);
    for (Genotype g : kGenotypes) {
      if (m[g] > 0) rate[{i, index_of(g)}] = m[g];
      total += m[g];
    }
  }
  std::map<std::pair<std::size_t, int>, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    GillespieEngine e(LatticeState(s0.lattice, start, derive_seed(10, i)), r);
    const auto out = e.step();
    ++counts[{out.event.site, index_of(out.event.to)}];
  }
  CHECK(counts.size() == rate.size());
  for (const auto& [key, w] : rate) {
    const double p = w / total;
    CHECK(std::fabs(counts[key] - n * p) < 3 * std::sqrt(n * p * (1 - p)));
  }
}

TEST_CASE("same seed gives the same event sequence") {
  const Lattice lat = ring(500);
  auto run = [&] {
    GillespieEngine e(initial_state(InitialCondition::bernoulli_genes(0.5), lat, 77),
                      make_rates(1, 4, 3, 2));
    std::vector<std::tuple<double, std::size_t, int>> ev;
    for (int i = 0; i < 10000; ++i) {
      const auto out = e.step();
      if (out.status != StepStatus::event) break;
      ev.emplace_back(out.event.time, out.event.site, index_of(out.event.to));
    }
    return ev;
  };
  const auto a = run();
  CHECK(a.size() == 10000);
  CHECK(a == run());
}

TEST_CASE("run_until sampling edge cases") {
  const Lattice lat = ring(20);
  GillespieEngine e(initial_state(InitialCondition::bernoulli_genes(0.5), lat, 3),
                    make_rates(1, 4, 3, 2));
  const ObservableSeries s = run_until(e, 0.0, density_sampler(1.0));
  CHECK(s.size() == 1);
  CHECK(s.columns.front() == "time");
  CHECK_THROWS_AS(run_until(e, -1.0, density_sampler(1.0)), UsageError);
}

TEST_CASE("initial conditions") {
  const Lattice lat({100, 100}, Boundary::torus());
  const LatticeState all = initial_state(InitialCondition::all(Genotype::AB), lat, 1);
  for (Genotype g : all.sites) CHECK(g == Genotype::AB);

  const LatticeState b = initial_state(InitialCondition::bernoulli_genes(0.5), lat, 5);
  const MeanFieldState d = densities(b);
  const double n = 10000.0;
  CHECK(std::fabs(d.u_aa - 0.25) < 3 * std::sqrt(0.25 * 0.75 / n));
  CHECK(std::fabs(d.u_ab - 0.5) < 3 * std::sqrt(0.25 / n));

  const Lattice box({11, 11}, Boundary::frozen(Genotype::BB));
  const LatticeState cube = initial_state(InitialCondition::cube_aa(2), box, 1);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto c = box.coordinates(i);
    const bool inside = std::abs(c[0] - 5) <= 2 && std::abs(c[1] - 5) <= 2;
    CHECK(cube.sites[i] == (inside ? Genotype::AA : Genotype::BB));
  }
  CHECK(cube.at(Lattice::kLowExterior) == Genotype::BB);
  CHECK_THROWS_AS(initial_state(InitialCondition::cube_aa(6), box, 1), UsageError);

  const LatticeState half =
      initial_state(InitialCondition::half_line_aa(), window(9, Genotype::AA, Genotype::BB), 1);
  for (int i = 0; i < 9; ++i) CHECK(half.sites[i] == (i <= 4 ? Genotype::AA : Genotype::BB));
}
