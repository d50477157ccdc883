#include "diploid/lattice_engine.hpp"

#include <algorithm>
#include <cmath>

#include "diploid/errors.hpp"

namespace diploid {

LatticeState::LatticeState(Lattice lat, std::vector<Genotype> genotypes, std::uint64_t seed,
                           double t)
    : lattice(std::move(lat)), sites(std::move(genotypes)), time(t), rng(seed) {
  if (sites.size() != lattice.size()) {
    throw UsageError("configuration size does not match the lattice");
  }
  if (!(t >= 0.0)) throw UsageError("time must be non-negative");
}

std::array<int, 3> neighbor_counts(const LatticeState& state, std::size_t site) {
  std::array<int, 3> counts{0, 0, 0};
  for (auto entry : state.lattice.neighbors(site)) ++counts[index_of(state.at(entry))];
  return counts;
}

RateMap transition_rates(Genotype current, const std::array<int, 3>& n,
                         const RateSet& r) noexcept {
  RateMap m;
  const double n_aa = n[0];
  const double n_ab = n[1];
  const double n_bb = n[2];
  switch (current) {
    case Genotype::AA:
      m.to[index_of(Genotype::AB)] = 2.0 * r.phi_bb * n_bb + r.phi_ba * n_ab;
      break;
    case Genotype::BB:
      m.to[index_of(Genotype::AB)] = 2.0 * r.phi_aa * n_aa + r.phi_ab * n_ab;
      break;
    case Genotype::AB:
      m.to[index_of(Genotype::BB)] = r.phi_bb * n_bb + 0.5 * r.phi_ba * n_ab;
      m.to[index_of(Genotype::AA)] = r.phi_aa * n_aa + 0.5 * r.phi_ab * n_ab;
      break;
  }
  return m;
}

RateMap site_transition_rates(const LatticeState& state, const RateSet& rates, std::size_t site) {
  if (!state.lattice.contains(site)) {
    throw UsageError("site " + std::to_string(site) + " is outside the lattice");
  }
  return transition_rates(state.sites[site], neighbor_counts(state, site), rates);
}

GillespieEngine::GillespieEngine(LatticeState state, RateSet rates)
    : state_(std::move(state)), rates_(rates), tree_(state_.lattice.size()) {
  rates_.validate();
  for (std::size_t s = 0; s < state_.sites.size(); ++s) refresh(s);
}

void GillespieEngine::refresh(std::size_t site) {
  tree_.set(site, site_transition_rates(state_, rates_, site).total());
}

void GillespieEngine::refresh_around(std::size_t site) {
  refresh(site);
  for (auto entry : state_.lattice.neighbors(site)) {
    if (entry >= 0) refresh(static_cast<std::size_t>(entry));
  }
}

void GillespieEngine::set_genotype(std::size_t site, Genotype g) {
  if (!state_.lattice.contains(site)) throw UsageError("site outside the lattice");
  state_.sites[site] = g;
  refresh_around(site);
}

StepOutcome GillespieEngine::step(double t_limit) {
  StepOutcome out;
  const double total = tree_.total();
  if (!(total > 0.0)) {
    out.status = StepStatus::frozen;
    if (std::isfinite(t_limit) && t_limit > state_.time) state_.time = t_limit;
    return out;
  }
  const double dt = state_.rng.exponential(total);
  if (state_.time + dt > t_limit) {
    state_.time = std::max(state_.time, t_limit);
    out.status = StepStatus::reached_limit;
    return out;
  }
  const std::size_t site = tree_.sample(state_.rng.uniform() * total);
  const RateMap m = site_transition_rates(state_, rates_, site);
  // Pick the target genotype proportionally within the site.
  double u = state_.rng.uniform() * m.total();
  Genotype target = state_.sites[site];
  for (Genotype g : kGenotypes) {
    const double w = m[g];
    if (w <= 0.0) continue;
    target = g;
    if (u < w) break;
    u -= w;
  }

  state_.time += dt;
  out.status = StepStatus::event;
  out.event = {dt, state_.time, site, state_.sites[site], target};
  state_.sites[site] = target;
  refresh_around(site);
  ++events_;
  return out;
}

std::uint64_t GillespieEngine::advance(double t_end) {
  const std::uint64_t before = events_;
  while (state_.time < t_end) {
    if (step(t_end).status != StepStatus::event) break;
  }
  return events_ - before;
}

std::size_t ObservableSeries::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw UsageError("no column named '" + name + "'");
}

Sampler density_sampler(double interval) {
  Sampler s;
  s.columns = {"u_aa", "u_ab", "u_bb"};
  s.interval = interval;
  s.probe = [](const LatticeState& st) {
    std::array<std::size_t, 3> c{0, 0, 0};
    for (Genotype g : st.sites) ++c[index_of(g)];
    const double n = static_cast<double>(st.sites.size());
    return std::vector<double>{c[0] / n, c[1] / n, c[2] / n};
  };
  return s;
}

void run_until(GillespieEngine& engine, double t_end, double interval,
               const std::function<void(const LatticeState&, double)>& on_sample) {
  const double t0 = engine.state().time;
  if (!(t_end >= t0)) throw UsageError("t_end must not precede the current time");
  if (!(interval > 0.0)) throw UsageError("sample interval must be positive");
  // Tolerance so that t_end itself is sampled when it is a multiple of the interval.
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  for (std::uint64_t k = 0;; ++k) {
    const double ts = t0 + static_cast<double>(k) * interval;
    if (ts > t_end + slack) break;
    const double target = std::min(ts, t_end);
    engine.advance(target);
    on_sample(engine.state(), ts);
  }
  engine.advance(t_end);
}

ObservableSeries run_until(GillespieEngine& engine, double t_end, const Sampler& sampler) {
  ObservableSeries series;
  series.columns.push_back("time");
  series.columns.insert(series.columns.end(), sampler.columns.begin(), sampler.columns.end());
  run_until(engine, t_end, sampler.interval, [&](const LatticeState& st, double ts) {
    std::vector<double> row{ts};
    auto values = sampler.probe(st);
    row.insert(row.end(), values.begin(), values.end());
    series.rows.push_back(std::move(row));
  });
  return series;
}

}  // namespace diploid
