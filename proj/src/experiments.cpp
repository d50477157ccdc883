#include "diploid/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "diploid/coupled_processes.hpp"
#include "diploid/errors.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/observables.hpp"

namespace diploid {

AbpStationaryResult abp_stationary_run(const AbpStationaryParams& p, std::uint64_t seed) {
  if (!(p.t_end > p.t_burn && p.t_burn >= 0.0)) throw UsageError("need 0 <= t_burn < t_end");
  const Lattice lat = ring(p.sites);
  GillespieEngine engine(initial_state(InitialCondition::abp_bernoulli(p.p), lat, seed),
                         make_rates(0.0, p.phi, p.phi, 0.0));
  BinaryLatticeState bits = project_to_abp(engine.state());
  TaggedEdgeTracker tracker(bits);
  std::size_t ones = bits.ones();
  const double n = static_cast<double>(p.sites);

  AbpStationaryResult res;
  double t = engine.state().time;
  double acc_density = 0.0, acc_gap = 0.0;
  for (;;) {
    const StepOutcome out = engine.step(p.t_end);
    const double t_new = engine.state().time;
    const double overlap = std::max(0.0, std::min(t_new, p.t_end) - std::max(t, p.t_burn));
    acc_density += overlap * static_cast<double>(ones) / n;
    if (tracker.alive()) {
      res.tracked_time += overlap;
      if (tracker.gap_zero(bits)) acc_gap += overlap;
    }
    t = t_new;
    if (out.status != StepStatus::event) break;
    const auto& e = out.event;
    const std::uint8_t b = e.to == Genotype::AB ? 1 : 0;
    if (b != bits.bits[e.site]) {
      bits.bits[e.site] = b;
      ones = b ? ones + 1 : ones - 1;
      tracker.on_flip(bits, e.site);
    }
  }
  const double span = p.t_end - p.t_burn;
  res.mean_density = acc_density / span;
  res.gap_zero_fraction = res.tracked_time > 0.0 ? acc_gap / res.tracked_time : 0.0;
  res.edge_displacement = tracker.displacement();
  res.events = engine.events();
  return res;
}

EdgeSpeedResult edge_speed_run(const EdgeSpeedParams& p, std::uint64_t seed) {
  if (!(p.t_end > 0.0)) throw UsageError("t_end must be positive");
  const Lattice lat = window(p.window, Genotype::AA, Genotype::AA);
  GillespieEngine engine(initial_state(InitialCondition::single(Genotype::AB), lat, seed),
                         make_rates(0.0, p.phi_ab, p.phi_ba, 0.0));
  engine.advance(p.t_end);
  const auto [edge, gap] = edges_and_gaps(engine.state(), EdgeView::abp_view);
  EdgeSpeedResult res;
  if (edge.x_plus) {
    res.x_plus = *edge.x_plus;
    res.clamped = *edge.x_plus == p.window - 1 - lat.origin()[0];
  }
  res.speed = static_cast<double>(res.x_plus) / p.t_end;
  return res;
}

FixationDriftResult fixation_drift_run(const FixationDriftParams& p, std::uint64_t seed) {
  if (!(p.t_end > 0.0)) throw UsageError("t_end must be positive");
  Lattice lat = window(p.window, Genotype::AA, Genotype::BB);
  lat.set_origin({p.origin});
  GillespieEngine engine(initial_state(InitialCondition::half_line_aa(Genotype::BB), lat, seed),
                         p.rates);
  engine.advance(p.t_end);
  const auto [edge, gap] = edges_and_gaps(engine.state(), EdgeView::genotype_view);
  FixationDriftResult res;
  res.r = edge.r.value_or(0);
  res.clamped = edge.r_clamped;
  res.speed = static_cast<double>(res.r) / p.t_end;
  return res;
}

AbsorptionResult half_aa_absorption_run(const AbsorptionParams& p, std::uint64_t seed) {
  const Lattice lat = ring(p.sites);
  std::vector<Genotype> sites(static_cast<std::size_t>(p.sites), Genotype::BB);
  std::fill(sites.begin(), sites.begin() + p.sites / 2, Genotype::AA);
  GillespieEngine engine(LatticeState(lat, std::move(sites), seed), p.rates);
  double last_event = 0.0;
  for (;;) {
    const StepOutcome out = engine.step(p.t_end);
    if (out.status != StepStatus::event) break;
    last_event = out.event.time;
  }
  AbsorptionResult res;
  const auto& s = engine.state().sites;
  res.all_aa = std::all_of(s.begin(), s.end(), [](Genotype g) { return g == Genotype::AA; });
  res.all_bb = std::all_of(s.begin(), s.end(), [](Genotype g) { return g == Genotype::BB; });
  res.time = engine.frozen() ? last_event : p.t_end;
  return res;
}

TorusRunResult torus_run(const TorusRunParams& p, std::uint64_t seed) {
  const Lattice lat({p.side, p.side}, Boundary::torus());
  GillespieEngine engine(initial_state(InitialCondition::bernoulli_genes(p.p), lat, seed),
                         p.rates);
  TorusRunResult res;
  std::vector<double> times = p.times;
  std::sort(times.begin(), times.end());
  for (double t : times) {
    engine.advance(t);
    res.times.push_back(t);
    res.densities.push_back(densities(engine.state()));
    res.cluster_sizes.push_back(mean_cluster_size(engine.state()));
  }
  return res;
}

std::optional<bool> propagation_run(const PropagationParams& p, std::uint64_t seed) {
  const int L = p.ring_factor * p.N;
  const double T = p.time_factor * p.N;
  const Lattice lat = ring(L);
  BinaryLatticeState start{lat, std::vector<std::uint8_t>(static_cast<std::size_t>(L), 0), 0.0};
  start.bits[lat.origin_index()] = 1;
  AbpEngine engine(start, p.phi, seed);
  std::vector<BinaryLatticeState> snaps{engine.state()};
  engine.advance(T);
  snaps.push_back(engine.state());
  snaps.back().time = T;
  return propagates(block_occupancy(snaps, p.N, T));
}

PropagationEstimate propagation_frequency(const PropagationParams& p, std::size_t replicates,
                                          std::uint64_t seed, unsigned threads) {
  const auto runs = run_replicates<std::optional<bool>>(
      replicates, seed, threads, [&](std::uint64_t s) { return propagation_run(p, s); });
  PropagationEstimate est;
  for (const auto& r : runs) {
    if (!r) continue;
    ++est.replicates;
    est.successes += *r ? 1 : 0;
  }
  if (est.replicates > 0) {
    const double n = static_cast<double>(est.replicates);
    est.frequency = static_cast<double>(est.successes) / n;
    est.stderr_ = std::sqrt(est.frequency * (1.0 - est.frequency) / n);
  }
  return est;
}

std::vector<FixationSweepPoint> fixation_sweep(const FixationSweepParams& p, std::uint64_t seed,
                                               unsigned threads) {
  if (!(p.ratio > 0.0)) throw UsageError("ratio must be positive");
  std::vector<FixationSweepPoint> out;
  for (std::size_t k = 0; k < p.phi_aa_values.size(); ++k) {
    FixationSweepPoint pt;
    pt.phi_aa = p.phi_aa_values[k];
    pt.phi_bb = pt.phi_aa / p.ratio;
    pt.replicates = p.replicates;
    const RateSet rates = make_rates(pt.phi_aa, p.phi_ab, p.phi_ba, pt.phi_bb);
    const Lattice lat = ring(p.sites);
    const auto runs = run_replicates<int>(
        p.replicates, derive_seed(seed, k), threads, [&](std::uint64_t s) {
          GillespieEngine engine(initial_state(InitialCondition::bernoulli_genes(0.5), lat, s),
                                 rates);
          engine.advance(p.t_end);
          const auto d = densities(engine.state());
          return d.u_aa == 1.0 ? 1 : (d.u_bb == 1.0 ? -1 : 0);
        });
    for (int r : runs) {
      pt.fixed_a += r == 1;
      pt.fixed_b += r == -1;
    }
    pt.frequency_a = p.replicates ? static_cast<double>(pt.fixed_a) / p.replicates : 0.0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace diploid
