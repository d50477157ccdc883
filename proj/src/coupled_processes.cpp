#include "diploid/coupled_processes.hpp"

#include <algorithm>
#include <cmath>

#include "diploid/errors.hpp"

namespace diploid {

std::size_t BinaryLatticeState::ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BinaryLatticeState project_to_abp(const LatticeState& state) {
  BinaryLatticeState b{state.lattice, std::vector<std::uint8_t>(state.sites.size()), state.time};
  for (std::size_t s = 0; s < state.sites.size(); ++s) {
    b.bits[s] = state.sites[s] == Genotype::AB ? 1 : 0;
  }
  return b;
}

double abp_flip_rate(const BinaryLatticeState& state, std::size_t site, double phi_ab) {
  if (!state.lattice.contains(site)) throw UsageError("site outside the lattice");
  int ones = 0;
  for (auto e : state.lattice.neighbors(site)) ones += state.at(e);
  return phi_ab * ones;
}

AbpEngine::AbpEngine(BinaryLatticeState state, double phi_ab, std::uint64_t seed)
    : state_(std::move(state)), phi_ab_(phi_ab), rng_(seed), tree_(state_.lattice.size()) {
  if (!(phi_ab >= 0.0) || !std::isfinite(phi_ab)) throw UsageError("phi_ab must be non-negative");
  if (state_.bits.size() != state_.lattice.size()) {
    throw UsageError("configuration size does not match the lattice");
  }
  for (std::size_t s = 0; s < state_.bits.size(); ++s) refresh(s);
}

void AbpEngine::refresh(std::size_t site) {
  tree_.set(site, abp_flip_rate(state_, site, phi_ab_));
}

bool AbpEngine::step(double t_limit) {
  const double total = tree_.total();
  if (!(total > 0.0)) {
    if (std::isfinite(t_limit) && t_limit > state_.time) state_.time = t_limit;
    return false;
  }
  const double dt = rng_.exponential(total);
  if (state_.time + dt > t_limit) {
    state_.time = std::max(state_.time, t_limit);
    return false;
  }
  const std::size_t site = tree_.sample(rng_.uniform() * total);
  state_.time += dt;
  state_.bits[site] ^= 1U;
  refresh(site);
  for (auto e : state_.lattice.neighbors(site)) {
    if (e >= 0) refresh(static_cast<std::size_t>(e));
  }
  return true;
}

void AbpEngine::advance(double t_end) {
  while (state_.time < t_end && step(t_end)) {
  }
}

VoterRates voter_rates(const RateSet& r) noexcept {
  return {std::min(r.phi_aa, r.phi_ab), std::max(r.phi_ba, r.phi_bb)};
}

GeneArrowEngine::GeneArrowEngine(GeneLatticeState state, const RateSet& rates, std::uint64_t seed,
                                 ArrowScheme scheme)
    : state_(std::move(state)),
      lattice_(std::make_unique<Lattice>(state_.lattice)),
      gen_(*lattice_, rates, scheme, seed, state_.time) {}

void GeneArrowEngine::advance(double t_end, const Callback& on_event) {
  for (;;) {
    if (!pending_) pending_ = gen_.next();
    if (pending_->time > t_end) break;
    const ArrowEvent e = *pending_;
    pending_.reset();
    state_.time = e.time;
    const bool changed = apply_arrow(state_, e, e.label);
    ++arrows_;
    if (on_event) on_event(state_, e, changed);
  }
  state_.time = std::max(state_.time, t_end);
}

ObservableSeries run_gene_until(GeneArrowEngine& engine, double t_end, double interval) {
  const double t0 = engine.state().time;
  if (!(t_end >= t0)) throw UsageError("t_end must not precede the current time");
  if (!(interval > 0.0)) throw UsageError("sample interval must be positive");
  const Sampler sampler = density_sampler(interval);
  ObservableSeries series;
  series.columns = {"time"};
  series.columns.insert(series.columns.end(), sampler.columns.begin(), sampler.columns.end());
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  for (std::uint64_t k = 0;; ++k) {
    const double ts = t0 + static_cast<double>(k) * interval;
    if (ts > t_end + slack) break;
    engine.advance(std::min(ts, t_end));
    const LatticeState projected = project_genotypes(engine.state(), 0);
    std::vector<double> row{ts};
    for (double v : sampler.probe(projected)) row.push_back(v);
    series.rows.push_back(std::move(row));
  }
  engine.advance(t_end);
  return series;
}

bool dominates(const GeneLatticeState& xi, const GeneLatticeState& zeta) noexcept {
  if (xi.genes.size() != zeta.genes.size()) return false;
  for (std::size_t i = 0; i < xi.genes.size(); ++i) {
    if (zeta.genes[i] == Allele::A && xi.genes[i] != Allele::A) return false;
  }
  return true;
}

GeneLatticeState thin_a_genes(const GeneLatticeState& xi, double keep, std::uint64_t seed) {
  if (!(keep >= 0.0 && keep <= 1.0)) throw UsageError("keep must lie in [0, 1]");
  GeneLatticeState out = xi;
  CounterRng rng(seed);
  for (auto& g : out.genes) {
    if (g == Allele::A && !rng.bernoulli(keep)) g = Allele::B;
  }
  return out;
}

CoupledRun run_coupled(const Lattice& lattice, const RateSet& rates, const GeneLatticeState& xi0,
                       const GeneLatticeState& zeta0, double T, std::uint64_t seed,
                       double sample_interval) {
  rates.validate();
  if (!(T >= 0.0)) throw UsageError("coupling window must be non-negative");
  if (!(sample_interval > 0.0)) throw UsageError("sample interval must be positive");
  if (!(xi0.lattice == lattice) || !(zeta0.lattice == lattice)) {
    throw UsageError("initial configurations must live on the given lattice");
  }
  if (!dominates(xi0, zeta0)) {
    throw UsageError("initial configurations violate domination: zeta has an a gene where xi "
                     "has b");
  }

  CoupledRun run;
  GeneLatticeState xi = xi0, zeta = zeta0;
  xi.time = zeta.time = 0.0;
  ArrowGenerator gen(lattice, rates, ArrowScheme::coupled, seed);

  auto record = [&](double t) {
    run.times.push_back(t);
    run.xi.push_back(xi);
    run.zeta.push_back(zeta);
    run.xi.back().time = run.zeta.back().time = t;
    ++run.checks;
    if (!dominates(xi, zeta)) {
      ++run.violations;
      if (!run.first_violation) run.first_violation = t;
    }
  };

  record(0.0);
  double next_sample = sample_interval;
  const double slack = 1e-9 * std::max(1.0, T);
  for (;;) {
    const ArrowEvent e = gen.next();
    while (next_sample <= T + slack && next_sample < e.time) {
      record(std::min(next_sample, T));
      next_sample += sample_interval;
    }
    if (e.time > T) break;
    apply_arrow(xi, e, e.label);
    apply_arrow(zeta, e, e.voter_label);
    xi.time = zeta.time = e.time;
    ++run.events;
    // Only the target gene can have changed.
    ++run.checks;
    const std::size_t g = 2 * static_cast<std::size_t>(e.target) + e.target_slot;
    if (zeta.genes[g] == Allele::A && xi.genes[g] != Allele::A) {
      ++run.violations;
      if (!run.first_violation) run.first_violation = e.time;
    }
  }
  return run;
}

RateMap arrow_induced_rates(const GeneLatticeState& genes, const RateSet& rates,
                            ArrowScheme scheme, std::size_t site) {
  if (!genes.lattice.contains(site)) throw UsageError("site outside the lattice");
  const auto streams = arrow_streams(rates, scheme);
  RateMap m;
  for (auto entry : genes.lattice.neighbors(site)) {
    for (int ss = 0; ss < 2; ++ss) {
      const Allele src = genes.at(entry, ss);
      const Allele partner = genes.at(entry, 1 - ss);
      for (int ts = 0; ts < 2; ++ts) {
        const Allele cur = genes.gene(site, ts);
        const Allele keep = genes.gene(site, 1 - ts);
        for (const auto& s : streams) {
          if (!arrow_fires(s.label, src, partner)) continue;
          const Allele v = arrow_payload(s.label, src);
          if (v == cur) continue;
          m.to[index_of(pair_alleles(v, keep))] += s.rate;
        }
      }
    }
  }
  return m;
}

namespace {

bool rates_match(const RateMap& a, const RateMap& b, double& max_err) {
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const double err = std::abs(a.to[i] - b.to[i]);
    max_err = std::max(max_err, err);
    if (err > 1e-12 * (1.0 + std::abs(b.to[i]))) ok = false;
  }
  return ok;
}

EquivalenceReport coupled_check(const RateSet& rates, const Lattice& lattice,
                                const InitialCondition& init, double T, std::uint64_t seed) {
  EquivalenceReport rep;
  rep.mode = EquivalenceMode::coupled;
  rep.replicates = 1;
  bool ok = true;

  GeneLatticeState genes = initial_genes(init, lattice, seed);
  GillespieEngine mirror(project_genotypes(genes, derive_seed(seed, 1)), rates);

  auto compare_all = [&](const GeneLatticeState& g) {
    ++rep.configurations;
    if (mirror.state().sites != g.genotypes()) {
      ok = false;
      return;
    }
    for (std::size_t s = 0; s < lattice.size(); ++s) {
      const RateMap a = arrow_induced_rates(g, rates, ArrowScheme::gene_based, s);
      const RateMap b = site_transition_rates(mirror.state(), rates, s);
      if (!rates_match(a, b, rep.max_rate_error)) ok = false;
    }
  };

  compare_all(genes);
  GeneArrowEngine engine(std::move(genes), rates, derive_seed(seed, 2));
  engine.advance(T, [&](const GeneLatticeState& g, const ArrowEvent& e, bool changed) {
    if (!changed) return;
    const Genotype now = g.genotype(e.target);
    const Genotype before = mirror.state().sites[e.target];
    if (now == before) return;  // slot swap within a heterozygote
    // The projected jump must be one the genotype chain can make.
    if (!(site_transition_rates(mirror.state(), rates, e.target)[now] > 0.0)) ok = false;
    mirror.set_genotype(e.target, now);
    ++rep.transitions;
    compare_all(g);
  });
  rep.exact = ok;
  return rep;
}

// Joint (#AA, #AB) count encoded as one integer key.
void tally(const std::vector<Genotype>& sites, Histogram& h) {
  std::int64_t n_aa = 0, n_ab = 0;
  for (Genotype g : sites) {
    n_aa += g == Genotype::AA;
    n_ab += g == Genotype::AB;
  }
  ++h[n_aa * static_cast<std::int64_t>(sites.size() + 1) + n_ab];
}

EquivalenceReport statistical_check(const RateSet& rates, const Lattice& lattice,
                                    const InitialCondition& init, double T, std::uint64_t seed,
                                    std::size_t replicates) {
  EquivalenceReport rep;
  rep.mode = EquivalenceMode::statistical;
  rep.replicates = replicates;
  Histogram gene, geno;
  for (std::size_t i = 0; i < replicates; ++i) {
    const GeneLatticeState g0 = initial_genes(init, lattice, derive_seed(seed, 3 * i));
    GeneArrowEngine ge(g0, rates, derive_seed(seed, 3 * i + 1));
    ge.advance(T);
    tally(ge.state().genotypes(), gene);

    GillespieEngine gi(project_genotypes(g0, derive_seed(seed, 3 * i + 2)), rates);
    gi.advance(T);
    tally(gi.state().sites, geno);
  }
  rep.chi_square = two_sample_chi_square(gene, geno);
  rep.exact = false;
  return rep;
}

}  // namespace

EquivalenceReport genotype_gene_equivalence_check(const RateSet& rates, const Lattice& lattice,
                                                  const InitialCondition& init, double T,
                                                  std::uint64_t seed, EquivalenceMode mode,
                                                  std::size_t replicates) {
  rates.validate();
  if (!(T >= 0.0)) throw UsageError("T must be non-negative");
  if (mode == EquivalenceMode::coupled) return coupled_check(rates, lattice, init, T, seed);
  if (replicates < 2) throw UsageError("statistical mode needs at least two replicates");
  return statistical_check(rates, lattice, init, T, seed, replicates);
}

}  // namespace diploid
