#include "diploid/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "diploid/coupled_processes.hpp"
#include "diploid/errors.hpp"
#include "diploid/experiments.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/mean_field.hpp"
#include "diploid/rng.hpp"
#include "diploid/stats.hpp"
#include "diploid/theory.hpp"
#include "diploid/verify/oracles.hpp"

namespace diploid::acceptance {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double max_abs_diff(const MeanFieldState& a, const MeanFieldState& b) {
  return std::max({std::fabs(a.u_aa - b.u_aa), std::fabs(a.u_ab - b.u_ab),
                   std::fabs(a.u_bb - b.u_bb)});
}

MeanFieldState random_interior(CounterRng& rng) {
  // uniform on the open simplex
  const double e1 = -std::log(rng.uniform_open());
  const double e2 = -std::log(rng.uniform_open());
  const double e3 = -std::log(rng.uniform_open());
  const double s = e1 + e2 + e3;
  return {e1 / s, e2 / s, e3 / s};
}

MeanFieldState final_state(const MeanFieldState& u0, const RateSet& r, double t) {
  return integrate(u0, r, t, {1e-3, t}).states.back();
}

// 1: coexistence
Outcome mean_field_coexistence(const Options& o) {
  const RateSet r = make_rates(1, 4, 3, 2);
  const MeanFieldState target{0.25, 0.5, 0.25};
  const MeanFieldState closed = oracle::interior_point(r);
  const auto report = stability_report(r);
  const FixedPoint* in = report.find(FixedPointKind::interior);
  CounterRng rng(derive_seed(o.seed, 1));
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    worst = std::max(worst, max_abs_diff(final_state(random_interior(rng), r, 200.0), target));
  }
  // eigenvalues scaled by phi^2 must reproduce phi1 and phi2
  const double f2 = phi(r) * phi(r);
  const auto ev = oracle::nonzero_eigenvalues(oracle::jacobian_numeric(target, r));
  const bool eig_ok = in && report.phi1 && report.phi2 &&
                      std::fabs(ev[0].real() * f2 - std::max(*report.phi1, *report.phi2)) < 1e-5 &&
                      std::fabs(ev[1].real() * f2 - std::min(*report.phi1, *report.phi2)) < 1e-5;
  const bool passed = in && in->stability == Stability::stable &&
                      max_abs_diff(closed, target) < 1e-15 && max_abs_diff(in->state, target) < 1e-12 &&
                      worst <= 1e-6 && report.phi1 && std::fabs(*report.phi1 + 16.0) < 1e-12 &&
                      report.phi2 && *report.phi2 < 0.0 && eig_ok &&
                      report.regime == Regime::coexistence;
  std::string d = "max |u(200) - (1/4,1/2,1/4)| = " + num(worst);
  if (report.phi1) d += ", phi1 = " + num(*report.phi1, 12);
  if (report.phi2) d += ", phi2 = " + num(*report.phi2, 6);
  return {passed, d};
}

// 2: founder control
Outcome mean_field_founder_control(const Options&) {
  const RateSet r = make_rates(4, 1, 2, 3);
  const MeanFieldState target{0.25, 0.5, 0.25};
  const auto report = stability_report(r);
  const FixedPoint* in = report.find(FixedPointKind::interior);
  const double to_aa = max_abs_diff(final_state({0.9, 0.05, 0.05}, r, 200.0), {1.0, 0.0, 0.0});
  const double to_bb = max_abs_diff(final_state({0.05, 0.05, 0.9}, r, 200.0), {0.0, 0.0, 1.0});
  const bool passed = in && max_abs_diff(in->state, target) < 1e-12 &&
                      max_abs_diff(oracle::interior_point(r), target) < 1e-15 && report.phi1 &&
                      std::fabs(*report.phi1 - 16.0) < 1e-12 &&
                      in->stability == Stability::unstable && to_aa <= 1e-6 && to_bb <= 1e-6 &&
                      report.regime == Regime::founder_control;
  std::string d = "corner errors " + num(to_aa) + ", " + num(to_bb);
  if (report.phi1) d += ", phi1 = " + num(*report.phi1, 12);
  return {passed, d};
}

// 3: simplex and Hardy-Weinberg curve
Outcome conservation(const Options& o) {
  CounterRng rng(derive_seed(o.seed, 3));
  double simplex = 0.0, hw = 0.0, rhs_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const RateSet r = make_rates(5.0 * rng.uniform_open(), 5.0 * rng.uniform_open(),
                                 5.0 * rng.uniform_open(), 5.0 * rng.uniform_open());
    const double p = rng.uniform_open();
    const MeanFieldState u0{p * p, 2.0 * p * (1.0 - p), (1.0 - p) * (1.0 - p)};
    const Trajectory tr = integrate(u0, r, 100.0, {1e-3, 0.1});
    simplex = std::max(simplex, tr.max_simplex_defect);
    for (const auto& u : tr.states) {
      simplex = std::max(simplex, std::fabs(u.sum() - 1.0));
      hw = std::max(hw, std::fabs(hw_defect(u)));
      const Vec3 a = rhs(u, r), b = oracle::rhs_termwise(u, r);
      for (int i = 0; i < 3; ++i) rhs_err = std::max(rhs_err, std::fabs(a[i] - b[i]));
    }
  }
  const bool passed = simplex <= 1e-9 && hw <= 1e-6 && rhs_err <= 1e-12;
  return {passed, "simplex defect " + num(simplex) + ", |hw| " + num(hw) +
                      ", rhs vs termwise " + num(rhs_err)};
}

// 4: regime map
Outcome regime_map(const Options&) {
  const auto v = linspace(0.0, 2.0, 50);
  const RegimeGrid g = phase_sweep(v, v, 1.0, 1.0);
  int mismatches = 0, asymmetric = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      const RateSet r{v[i], 1.0, 1.0, v[j]};
      mismatches += g.at(i, j) != oracle::regime_by_signs(r);
      asymmetric += g.at(i, j) != oracle::swap_regime(g.at(j, i));
    }
  }
  return {mismatches == 0 && asymmetric == 0 && g.cells.size() == 2500,
          std::to_string(mismatches) + " label mismatches, " + std::to_string(asymmetric) +
              " asymmetric cells of " + std::to_string(g.cells.size())};
}

// 5 and 6 share these runs
std::vector<AbpStationaryResult> abp_runs(const Options& o) {
  const AbpStationaryParams p;
  return run_replicates<AbpStationaryResult>(
      20, derive_seed(o.seed, 5), o.threads,
      [&](std::uint64_t s) { return abp_stationary_run(p, s); });
}

Outcome abp_density(const std::vector<AbpStationaryResult>& runs) {
  int inside = 0;
  double lo = 1.0, hi = 0.0;
  for (const auto& r : runs) {
    inside += r.mean_density >= 0.47 && r.mean_density <= 0.53;
    lo = std::min(lo, r.mean_density);
    hi = std::max(hi, r.mean_density);
  }
  return {inside >= 18, std::to_string(inside) + "/20 seeds in [0.47, 0.53], range [" + num(lo) +
                            ", " + num(hi) + "]"};
}

Outcome gap_occupancy(const std::vector<AbpStationaryResult>& runs) {
  std::vector<double> f;
  for (const auto& r : runs) {
    if (r.tracked_time > 0.0) f.push_back(r.gap_zero_fraction);
  }
  const Summary s = summarize(f);
  const double bound = 2.0 / 3.0 + 0.03;
  const bool theory_ok = std::fabs(gap_occupancy_bound(1) - 2.0 / 3.0) < 1e-15;
  return {!f.empty() && s.mean <= bound && theory_ok,
          "P(G = 0) = " + num(s.mean) + " +- " + num(s.stderr_, 2) + " over " +
              std::to_string(f.size()) + " tracked edges, bound " + num(bound)};
}

// 7
Outcome edge_speed(const Options& o) {
  const EdgeSpeedParams p;
  const auto runs = run_replicates<EdgeSpeedResult>(
      20, derive_seed(o.seed, 7), o.threads, [&](std::uint64_t s) { return edge_speed_run(p, s); });
  std::vector<double> v;
  int clamped = 0;
  for (const auto& r : runs) {
    v.push_back(r.speed);
    clamped += r.clamped;
  }
  const Summary s = summarize(v);
  const double bound = 0.4;
  const bool theory_ok = std::fabs(edge_speed_bound(1.0, 1.0) - bound) < 1e-15;
  return {s.mean >= bound - 3.0 * s.stderr_ && clamped == 0 && theory_ok,
          "X+/t = " + num(s.mean) + " +- " + num(s.stderr_, 2) + ", bound 0.4, " +
              std::to_string(clamped) + " clamped"};
}

// 8
Outcome couplings(const Options& o) {
  const Lattice lat = ring(20);
  const RateSet r = make_rates(1.0, 4.0, 3.0, 2.0);
  const auto init = InitialCondition::bernoulli_genes(0.5);
  const auto exact = genotype_gene_equivalence_check(r, lat, init, 10.0, derive_seed(o.seed, 80),
                                                     EquivalenceMode::coupled);
  const auto stat = genotype_gene_equivalence_check(r, lat, init, 5.0, derive_seed(o.seed, 81),
                                                    EquivalenceMode::statistical, 1000);

  const std::map<int, RateSet> cases{{1, make_rates(1.0, 2.0, 2.0, 1.0)},
                                     {2, make_rates(1.0, 2.0, 1.0, 2.0)},
                                     {3, make_rates(2.0, 1.0, 2.0, 1.0)},
                                     {4, make_rates(2.0, 1.0, 1.0, 2.0)}};
  std::uint64_t checks = 0, violations = 0, events = 0;
  bool cases_ok = true;
  for (const auto& [c, rates] : cases) {
    cases_ok = cases_ok && coupling_case(rates) == c;
    for (int k = 0; k < 10; ++k) {
      const std::uint64_t s = derive_seed(o.seed, 800 + 10 * c + k);
      const GeneLatticeState xi = initial_genes(init, lat, derive_seed(s, 1));
      const GeneLatticeState zeta = thin_a_genes(xi, 0.5, derive_seed(s, 2));
      const CoupledRun run = run_coupled(lat, rates, xi, zeta, 10.0, derive_seed(s, 3));
      checks += run.checks;
      violations += run.violations;
      events += run.events;
    }
  }
  const bool passed = exact.passed() && exact.configurations > 0 && stat.passed() && cases_ok &&
                      violations == 0 && checks > 0;
  return {passed, "coupled: " + std::to_string(exact.configurations) + " configurations, max rate error " +
                      num(exact.max_rate_error) + "; statistical: chi2 " +
                      num(stat.chi_square.statistic) + " on " + std::to_string(stat.chi_square.dof) +
                      " dof; domination: " + std::to_string(violations) + " violations in " +
                      std::to_string(checks) + " checks"};
}

// 9
Outcome invasion_walk_check(const Options& o) {
  CounterRng rng(derive_seed(o.seed, 9));
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const double aa = 0.1 + 30.0 * rng.uniform();
    const double bb = 0.05 + 2.0 * rng.uniform();
    const InvasionWalkParams p = invasion_params(d, aa, bb);
    for (int K = 0; K <= 20; ++K) {
      worst = std::max(worst, std::fabs(hitting_probability(p, K) -
                                        oracle::hitting_probability_linear(p.r, K)));
    }
  }
  const InvasionWalkParams p = invasion_params(1, 20.0, 1.0);
  const double expected = oracle::hitting_probability_linear(p.r, 5);
  const InvasionWalkResult mc = invasion_walk(p, 5, 1000000, derive_seed(o.seed, 90));
  const MartingaleCheck m = martingale_increments(p, 1000000, derive_seed(o.seed, 91));
  const bool passed = worst <= 1e-12 && std::fabs(expected - 5.52e-3) < 5e-6 &&
                      std::fabs(mc.empirical - mc.closed_form) <= 3.0 * mc.stderr_ &&
                      std::fabs(m.mean) <= 3.0 * m.stderr_;
  return {passed, "closed form vs linear solve " + num(worst) + "; P = " + num(mc.closed_form, 6) +
                      ", Monte Carlo " + num(mc.empirical, 6) + " +- " + num(mc.stderr_, 2) +
                      "; martingale increment " + num(m.mean, 3) + " +- " + num(m.stderr_, 2)};
}

// 10
Outcome fixation_drift(const Options& o) {
  const FixationDriftParams p;
  const double bound = 7.0 / 9.0;
  const bool theory_ok = condition5_check(p.rates) &&
                         std::fabs(fixation_speed_bound(p.rates) - bound) < 1e-15;
  const auto runs = run_replicates<FixationDriftResult>(
      20, derive_seed(o.seed, 10), o.threads,
      [&](std::uint64_t s) { return fixation_drift_run(p, s); });
  std::vector<double> v;
  int clamped = 0;
  for (const auto& r : runs) {
    v.push_back(r.speed);
    clamped += r.clamped;
  }
  const Summary s = summarize(v);
  return {theory_ok && clamped == 0 && s.mean >= bound - 3.0 * s.stderr_,
          "r/t = " + num(s.mean) + " +- " + num(s.stderr_, 2) + ", bound " + num(bound) + ", " +
              std::to_string(clamped) + " clamped"};
}

// 11
Outcome absorption(const Options& o) {
  const AbsorptionParams p;
  const RateSet& r = p.rates;
  const bool regime_ok = std::min(r.phi_aa, r.phi_ab) > std::max(r.phi_ba, r.phi_bb);
  const auto runs = run_replicates<AbsorptionResult>(
      10, derive_seed(o.seed, 11), o.threads,
      [&](std::uint64_t s) { return half_aa_absorption_run(p, s); });
  int hits = 0;
  double latest = 0.0;
  for (const auto& a : runs) {
    hits += a.all_aa;
    if (a.all_aa) latest = std::max(latest, a.time);
  }
  return {regime_ok && hits >= 9, std::to_string(hits) + "/10 seeds absorbed in all-AA, latest at t = " +
                                      num(latest)};
}

// 12
Outcome torus_snapshots(const Options& o) {
  TorusRunParams left;
  left.rates = make_rates(4, 5, 5, 4);
  left.times = {50.0};
  const auto lr = run_replicates<TorusRunResult>(10, derive_seed(o.seed, 120), o.threads,
                                                 [&](std::uint64_t s) { return torus_run(left, s); });
  int dense = 0;
  double lo = 1.0;
  for (const auto& r : lr) {
    dense += r.densities.back().u_ab >= 0.2;
    lo = std::min(lo, r.densities.back().u_ab);
  }

  TorusRunParams right;
  right.rates = make_rates(5, 1, 1, 5);
  right.times = {10.0, 20.0, 30.0, 40.0, 50.0};
  const auto rr = run_replicates<TorusRunResult>(
      10, derive_seed(o.seed, 121), o.threads, [&](std::uint64_t s) { return torus_run(right, s); });
  int growing = 0;
  double first = 0.0, last = 0.0;
  for (const auto& r : rr) {
    const auto& c = r.cluster_sizes;
    growing += std::adjacent_find(c.begin(), c.end(), std::greater_equal<double>()) == c.end();
    first += c.front() / 10.0;
    last += c.back() / 10.0;
  }
  return {dense >= 8 && growing >= 8,
          "left: " + std::to_string(dense) + "/10 with u_ab(50) >= 0.2 (min " + num(lo) +
              "); right: " + std::to_string(growing) + "/10 increasing, mean cluster " +
              num(first) + " -> " + num(last)};
}

// 13
Outcome condition_evaluators(const Options&) {
  const double want = 6.0 * (1.0 + std::sqrt(3.0));
  const double err = std::fabs(condition4_threshold(1) - want);
  int bad = 0, cells = 0;
  for (int d = 1; d <= 3; ++d) {
    for (double c : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 6.5, 8.0, 12.0, 50.0}) {
      ++cells;
      if (c <= 2.0 * d) {
        try {
          path_tail_bound(0, d, c);
          ++bad;
        } catch (const DivergentBound&) {
        }
        continue;
      }
      double prev = INFINITY;
      for (int N = 0; N <= 30; ++N) {
        const double b = path_tail_bound(N, d, c);
        if (!std::isfinite(b) || !(b < prev)) {
          ++bad;
          break;
        }
        prev = b;
      }
    }
  }
  return {err <= 1e-12 && bad == 0,
          "threshold error " + num(err) + ", " + std::to_string(bad) + " bad cells of " +
              std::to_string(cells)};
}

const std::map<int, std::pair<std::string, double>>& table() {
  static const std::map<int, std::pair<std::string, double>> t{
      {1, {"mean-field coexistence", 1}},   {2, {"mean-field founder control", 1}},
      {3, {"conservation and HW curve", 5}}, {4, {"regime map", 1}},
      {5, {"abp density", 120}},            {6, {"gap occupancy", 120}},
      {7, {"edge speed", 120}},             {8, {"exact couplings", 60}},
      {9, {"invasion walk", 30}},           {10, {"fixation drift", 180}},
      {11, {"all-aa absorption", 120}},     {12, {"torus snapshots", 600}},
      {13, {"condition evaluators", 1}}};
  return t;
}

}  // namespace

std::vector<int> all_criteria() {
  std::vector<int> ids;
  for (const auto& [id, _] : table()) ids.push_back(id);
  return ids;
}

std::vector<CriterionResult> run(const std::vector<int>& ids, const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result) {
  using clock = std::chrono::steady_clock;
  std::optional<std::vector<AbpStationaryResult>> abp;
  double abp_seconds = 0.0;
  std::vector<CriterionResult> out;
  for (int id : ids) {
    const auto it = table().find(id);
    if (it == table().end()) throw UsageError("no criterion " + std::to_string(id));
    CriterionResult res;
    res.id = id;
    res.name = it->second.first;
    res.budget = it->second.second;
    const auto t0 = clock::now();
    Outcome oc;
    try {
      if ((id == 5 || id == 6) && !abp) {
        abp = abp_runs(options);
        abp_seconds = std::chrono::duration<double>(clock::now() - t0).count();
      }
      switch (id) {
        case 1: oc = mean_field_coexistence(options); break;
        case 2: oc = mean_field_founder_control(options); break;
        case 3: oc = conservation(options); break;
        case 4: oc = regime_map(options); break;
        case 5: oc = abp_density(*abp); break;
        case 6: oc = gap_occupancy(*abp); break;
        case 7: oc = edge_speed(options); break;
        case 8: oc = couplings(options); break;
        case 9: oc = invasion_walk_check(options); break;
        case 10: oc = fixation_drift(options); break;
        case 11: oc = absorption(options); break;
        case 12: oc = torus_snapshots(options); break;
        case 13: oc = condition_evaluators(options); break;
      }
    } catch (const std::exception& e) {
      oc = {false, std::string("error: ") + e.what()};
    }
    res.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    // 5 and 6 each answer for the shared runs
    if (id == 5 || id == 6) res.seconds = std::max(res.seconds, abp_seconds);
    res.passed = oc.passed;
    res.detail = oc.detail;
    if (options.check_runtime && res.seconds > res.budget) {
      res.passed = false;
      res.detail += "; over the " + num(res.budget) + " s budget";
    }
    if (on_result) on_result(res);
    out.push_back(std::move(res));
  }
  return out;
}

std::string format(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-28s ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str());
  char tail[48];
  std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
  return head + r.detail + tail;
}

}  // namespace diploid::acceptance
