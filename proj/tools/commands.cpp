#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>

#include <json.hpp>

#include "diploid/coupled_processes.hpp"
#include "diploid/errors.hpp"
#include "diploid/experiments.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/io.hpp"
#include "diploid/mean_field.hpp"
#include "diploid/observables.hpp"
#include "diploid/parallel.hpp"
#include "diploid/theory.hpp"
#include "diploid/verify/acceptance.hpp"

namespace diploid::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string numbered(const std::string& stem, std::size_t i, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu", i);
  return stem + buf + ext;
}

fs::path output_dir(const ExperimentConfig& c, const RunOptions& o) {
  fs::path p = o.out ? *o.out : (c.output_dir.empty() ? "." : c.output_dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + p.string() + "': " + ec.message());
  return p;
}

std::vector<double> density_row(double t, const LatticeState& st) {
  const MeanFieldState d = densities(st);
  return {t, d.u_aa, d.u_ab, d.u_bb, mean_cluster_size(st)};
}

int simulate(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  const Lattice lat = c.lattice();
  const RateSet rates = c.rates();
  const double t_end = *c.t_end;
  const fs::path out = output_dir(c, o);
  const bool raster = lat.dimension() == 1;

  std::vector<std::vector<double>> finals(c.replicates);
  std::vector<std::uint64_t> events(c.replicates);
  parallel_for(c.replicates, o.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(c.seed, i);
    ObservableSeries series;
    series.columns = {"time", "u_aa", "u_ab", "u_bb", "mean_cluster_size"};
    std::vector<std::vector<Genotype>> rows;
    std::size_t k = 0;
    auto record = [&](const LatticeState& st, double ts) {
      series.rows.push_back(density_row(ts, st));
      if (c.snapshots) {
        if (raster) {
          rows.push_back(st.sites);
        } else {
          write_snapshot(st, (out / numbered(numbered("snapshot", i, ""), k, ".pgm")).string());
        }
      }
      ++k;
    };
    if (c.engine == "gillespie") {
      GillespieEngine engine(initial_state(c.initial, lat, seed), rates);
      run_until(engine, t_end, c.sample_interval, record);
      events[i] = engine.events();
    } else {
      GeneArrowEngine engine(initial_genes(c.initial, lat, seed), rates, derive_seed(seed, 1));
      const double slack = 1e-9 * std::max(1.0, t_end);
      for (std::uint64_t j = 0;; ++j) {
        const double ts = static_cast<double>(j) * c.sample_interval;
        if (ts > t_end + slack) break;
        engine.advance(std::min(ts, t_end));
        record(project_genotypes(engine.state(), 0), ts);
      }
      engine.advance(t_end);
      events[i] = engine.arrows();
    }
    write_series(series, (out / numbered("series", i, ".csv")).string());
    if (c.snapshots && raster) {
      write_file_atomic((out / numbered("raster", i, ".pgm")).string(),
                        encode_pgm(make_raster(rows)));
    }
    finals[i] = series.rows.back();
  });

  ObservableSeries summary;
  summary.columns = {"time", "replicate", "u_aa", "u_ab", "u_bb", "mean_cluster_size", "events"};
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const auto& f = finals[i];
    summary.rows.push_back({f[0], static_cast<double>(i), f[1], f[2], f[3], f[4],
                            static_cast<double>(events[i])});
  }
  write_series(summary, (out / "summary.csv").string());
  write_file_atomic((out / "config.txt").string(), emit_config(c));
  log << "simulate: " << c.replicates << " replicate(s) to t = " << format_number(t_end)
      << ", output in " << out.string() << "\n";
  for (const auto& row : summary.rows) {
    log << "  replicate " << row[1] << ": u_aa " << format_number(row[2]) << ", u_ab "
        << format_number(row[3]) << ", u_bb " << format_number(row[4]) << ", events " << row[6]
        << "\n";
  }
  return ok;
}

json eigen_json(const std::array<std::complex<double>, 2>& ev) {
  json a = json::array();
  for (const auto& z : ev) a.push_back({z.real(), z.imag()});
  return a;
}

int meanfield(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  const RateSet rates = c.rates();
  const fs::path out = output_dir(c, o);
  const Trajectory tr = integrate(c.state0, rates, *c.t_end, {c.step, c.sample_interval});
  write_series(tr.to_series(), (out / "trajectory.csv").string());

  const FixedPointReport rep = stability_report(rates);
  json j;
  j["rates"] = {{"phi_aa", rates.phi_aa}, {"phi_ab", rates.phi_ab},
                {"phi_ba", rates.phi_ba}, {"phi_bb", rates.phi_bb}};
  j["regime"] = to_string(rep.regime);
  j["psi"] = psi(rates);
  if (rep.phi1) j["phi1"] = *rep.phi1;
  if (rep.phi2) j["phi2"] = *rep.phi2;
  j["fixed_points"] = json::array();
  log << "meanfield: regime " << to_string(rep.regime) << "\n";
  for (const auto& fp : rep.points) {
    j["fixed_points"].push_back({{"kind", to_string(fp.kind)},
                                 {"state", {fp.state.u_aa, fp.state.u_ab, fp.state.u_bb}},
                                 {"eigenvalues", eigen_json(fp.eigenvalues)},
                                 {"stability", to_string(fp.stability)}});
    log << "  " << to_string(fp.kind) << " (" << format_number(fp.state.u_aa) << ", "
        << format_number(fp.state.u_ab) << ", " << format_number(fp.state.u_bb) << ") "
        << to_string(fp.stability) << "\n";
  }
  const MeanFieldState& last = tr.states.back();
  j["final"] = {{"time", tr.times.back()}, {"state", {last.u_aa, last.u_ab, last.u_bb}}};
  j["max_simplex_defect"] = tr.max_simplex_defect;
  write_file_atomic((out / "report.json").string(), j.dump(2) + "\n");
  log << "  state at t = " << format_number(tr.times.back()) << ": (" << format_number(last.u_aa)
      << ", " << format_number(last.u_ab) << ", " << format_number(last.u_bb) << ")\n";
  return ok;
}

int phase_sweep_cmd(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  const fs::path out = output_dir(c, o);
  const RegimeGrid g = phase_sweep(linspace(c.aa_min, c.aa_max, c.grid_aa),
                                   linspace(c.bb_min, c.bb_max, c.grid_bb), *c.phi_ab, *c.phi_ba);
  std::string csv = "phi_aa,phi_bb,regime\n";
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < g.aa_values.size(); ++i) {
    for (std::size_t j = 0; j < g.bb_values.size(); ++j) {
      const std::string name = to_string(g.at(i, j));
      ++counts[name];
      csv += format_number(g.aa_values[i]) + "," + format_number(g.bb_values[j]) + "," + name + "\n";
    }
  }
  write_file_atomic((out / "regimes.csv").string(), csv);
  log << "phase-sweep: " << g.cells.size() << " cells";
  for (const auto& [name, n] : counts) log << ", " << name << " " << n;
  log << "\n";
  return ok;
}

int coupled(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  const Lattice lat = c.lattice();
  const RateSet rates = c.rates();
  const fs::path out = output_dir(c, o);
  std::vector<CoupledRun> runs(c.replicates);
  parallel_for(c.replicates, o.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(c.seed, i);
    const GeneLatticeState xi = initial_genes(c.initial, lat, derive_seed(seed, 1));
    GeneLatticeState zeta = xi;
    if (c.zeta_initial == "dominated") {
      zeta = thin_a_genes(xi, c.zeta_p, derive_seed(seed, 2));
    } else if (c.zeta_initial == "all_b") {
      zeta = thin_a_genes(xi, 0.0, 0);
    }
    runs[i] = run_coupled(lat, rates, xi, zeta, *c.t_end, derive_seed(seed, 3), c.sample_interval);

    ObservableSeries s;
    s.columns = {"time", "xi_u_aa", "xi_u_ab", "xi_u_bb", "zeta_u_aa", "zeta_u_ab", "zeta_u_bb"};
    for (std::size_t k = 0; k < runs[i].times.size(); ++k) {
      const MeanFieldState a = densities(project_genotypes(runs[i].xi[k], 0));
      const MeanFieldState b = densities(project_genotypes(runs[i].zeta[k], 0));
      s.rows.push_back({runs[i].times[k], a.u_aa, a.u_ab, a.u_bb, b.u_aa, b.u_ab, b.u_bb});
    }
    write_series(s, (out / numbered("coupled", i, ".csv")).string());
    // the trajectories are no longer needed
    runs[i].xi.clear();
    runs[i].zeta.clear();
  });

  ObservableSeries summary;
  summary.columns = {"time", "replicate", "events", "checks", "violations", "first_violation"};
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    violations += r.violations;
    summary.rows.push_back({*c.t_end, static_cast<double>(i), static_cast<double>(r.events),
                            static_cast<double>(r.checks), static_cast<double>(r.violations),
                            r.first_violation.value_or(-1.0)});
  }
  write_series(summary, (out / "domination.csv").string());
  log << "coupled: coupling case " << coupling_case(rates) << ", " << runs.size()
      << " replicate(s), " << violations << " domination violation(s)\n";
  return violations == 0 ? ok : criterion_failed;
}

int walk(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  const InvasionWalkParams p = invasion_params(c.dimension, *c.phi_aa, *c.phi_bb);
  const InvasionWalkResult res = invasion_walk(p, c.walk_K, c.walks, c.seed);
  json j{{"d", p.d},          {"phi_aa", p.phi_aa},
         {"phi_bb", p.phi_bb}, {"r", p.r},
         {"l", p.l},          {"c", p.c()},
         {"K", c.walk_K},     {"walks", res.walks},
         {"hits", res.hits},  {"closed_form", res.closed_form},
         {"monte_carlo", res.empirical}, {"stderr", res.stderr_}};
  if (o.out || !c.output_dir.empty()) {
    write_file_atomic((output_dir(c, o) / "walk.json").string(), j.dump(2) + "\n");
  }
  log << "walk: r = " << format_number(p.r) << ", c = " << format_number(p.c()) << ", K = "
      << c.walk_K << "\n  closed form " << format_number(res.closed_form) << "\n  Monte Carlo "
      << format_number(res.empirical) << " +- " << format_number(res.stderr_) << " ("
      << res.walks << " walks)\n";
  return ok;
}

int verify(const ExperimentConfig& c, const RunOptions& o, std::ostream& log) {
  acceptance::Options opt;
  opt.seed = c.seed;
  opt.threads = o.threads;
  const auto ids = c.criteria.empty() ? acceptance::all_criteria() : c.criteria;
  bool all = true;
  acceptance::run(ids, opt, [&](const acceptance::CriterionResult& r) {
    log << acceptance::format(r) << std::endl;
    all = all && r.passed;
  });
  return all ? ok : criterion_failed;
}

}  // namespace

int run_command(ExperimentConfig config, const RunOptions& options, std::ostream& log) {
  if (options.seed) config.seed = *options.seed;
  const std::string& cmd = config.command;
  if (cmd == "simulate") return simulate(config, options, log);
  if (cmd == "meanfield") return meanfield(config, options, log);
  if (cmd == "phase-sweep") return phase_sweep_cmd(config, options, log);
  if (cmd == "coupled") return coupled(config, options, log);
  if (cmd == "walk") return walk(config, options, log);
  if (cmd == "verify") return verify(config, options, log);
  throw UsageError("unknown command '" + cmd + "'");
}

int run_guarded(const std::string& command, const std::optional<std::string>& config_path,
                const RunOptions& options, std::ostream& log, std::ostream& err) {
  try {
    ExperimentConfig config;
    if (config_path) {
      config = load_config(*config_path, command);
    } else if (command == "verify") {
      config.command = command;
      config.seed = acceptance::Options{}.seed;
    } else {
      throw UsageError("--config is required for " + command);
    }
    return run_command(std::move(config), options, log);
  } catch (const UsageError& e) {
    err << "diploid " << command << ": " << e.what() << "\n";
    return usage_error;
  } catch (const DegenerateWalk& e) {
    err << "diploid " << command << ": " << e.what() << "\n";
    return usage_error;
  } catch (const DivergentBound& e) {
    err << "diploid " << command << ": " << e.what() << "\n";
    return usage_error;
  } catch (const NumericalFailure& e) {
    err << "diploid " << command << ": numerical failure at t = " << e.time() << ": " << e.what()
        << "\n";
    return runtime_failure;
  } catch (const std::exception& e) {
    err << "diploid " << command << ": " << e.what() << "\n";
    return runtime_failure;
  }
}

}  // namespace diploid::cli
