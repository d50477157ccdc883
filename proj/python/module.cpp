#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diploid/config.hpp"
#include "diploid/coupled_processes.hpp"
#include "diploid/errors.hpp"
#include "diploid/initial_condition.hpp"
#include "diploid/io.hpp"
#include "diploid/lattice_engine.hpp"
#include "diploid/mean_field.hpp"
#include "diploid/observables.hpp"
#include "diploid/theory.hpp"
#include "diploid/verify/acceptance.hpp"

namespace py = pybind11;
using namespace diploid;

namespace {

MeanFieldState to_state(const std::array<double, 3>& u) { return {u[0], u[1], u[2]}; }
std::array<double, 3> from_state(const MeanFieldState& u) { return {u.u_aa, u.u_ab, u.u_bb}; }

Lattice make_lattice(const std::vector<int>& sides, const std::string& boundary,
                     const std::string& low, const std::string& high) {
  if (boundary == "torus") return Lattice(sides, Boundary::torus());
  if (boundary == "frozen") {
    return Lattice(sides, Boundary::frozen(parse_genotype(low), parse_genotype(high)));
  }
  throw UsageError("boundary must be 'torus' or 'frozen'");
}

InitialCondition make_initial(const std::string& kind, double p, const std::string& genotype,
                              const std::string& fill, const std::string& background, int N) {
  InitialCondition ic;
  ic.kind = parse_initial_kind(kind);
  ic.p = p;
  ic.genotype = parse_genotype(genotype);
  ic.fill = parse_genotype(fill);
  ic.background = parse_genotype(background);
  ic.N = N;
  return ic;
}

py::dict series_dict(const ObservableSeries& s) {
  py::dict d;
  d["columns"] = s.columns;
  d["rows"] = s.rows;
  return d;
}

std::vector<int> genotype_codes(const std::vector<Genotype>& g) {
  std::vector<int> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = index_of(g[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core of the diploid package";

  py::class_<RateSet>(m, "RateSet")
      .def(py::init([](double aa, double ab, double ba, double bb) {
             return make_rates(aa, ab, ba, bb);
           }),
           py::arg("phi_aa"), py::arg("phi_ab"), py::arg("phi_ba"), py::arg("phi_bb"))
      .def_readonly("phi_aa", &RateSet::phi_aa)
      .def_readonly("phi_ab", &RateSet::phi_ab)
      .def_readonly("phi_ba", &RateSet::phi_ba)
      .def_readonly("phi_bb", &RateSet::phi_bb)
      .def("swapped", &RateSet::swapped)
      .def("__eq__", [](const RateSet& a, const RateSet& b) { return a == b; })
      .def("__repr__", [](const RateSet& r) {
        return "RateSet(" + format_number(r.phi_aa) + ", " + format_number(r.phi_ab) + ", " +
               format_number(r.phi_ba) + ", " + format_number(r.phi_bb) + ")";
      });

  py::enum_<Genotype>(m, "Genotype")
      .value("AA", Genotype::AA)
      .value("AB", Genotype::AB)
      .value("BB", Genotype::BB);

  py::enum_<Regime>(m, "Regime")
      .value("gene_a", Regime::gene_a)
      .value("gene_b", Regime::gene_b)
      .value("coexistence", Regime::coexistence)
      .value("founder_control", Regime::founder_control)
      .value("degenerate", Regime::degenerate);

  // mean field
  m.def("rhs", [](const std::array<double, 3>& u, const RateSet& r) { return rhs(to_state(u), r); },
        py::arg("state"), py::arg("rates"));
  m.def(
      "integrate",
      [](const std::array<double, 3>& u0, const RateSet& r, double t_end, double step,
         double sample_interval) {
        return series_dict(integrate(to_state(u0), r, t_end, {step, sample_interval}).to_series());
      },
      py::arg("state0"), py::arg("rates"), py::arg("t_end"), py::arg("step") = 1e-3,
      py::arg("sample_interval") = 1.0);
  m.def(
      "interior_fixed_point",
      [](const RateSet& r) -> std::optional<std::array<double, 3>> {
        const auto p = interior_fixed_point(r);
        if (!p) return std::nullopt;
        return from_state(*p);
      },
      py::arg("rates"));
  m.def("classify", &classify, py::arg("rates"));
  m.def(
      "stability_report",
      [](const RateSet& r) {
        const FixedPointReport rep = stability_report(r);
        py::dict d;
        d["regime"] = to_string(rep.regime);
        d["phi1"] = rep.phi1;
        d["phi2"] = rep.phi2;
        py::list pts;
        for (const auto& fp : rep.points) {
          py::dict p;
          p["kind"] = to_string(fp.kind);
          p["state"] = from_state(fp.state);
          p["eigenvalues"] = std::vector<std::complex<double>>(fp.eigenvalues.begin(),
                                                               fp.eigenvalues.end());
          p["stability"] = to_string(fp.stability);
          pts.append(p);
        }
        d["points"] = pts;
        return d;
      },
      py::arg("rates"));
  m.def(
      "phase_sweep",
      [](const std::vector<double>& aa, const std::vector<double>& bb, double ab, double ba) {
        const RegimeGrid g = phase_sweep(aa, bb, ab, ba);
        std::vector<std::vector<std::string>> out(aa.size());
        for (std::size_t i = 0; i < aa.size(); ++i) {
          for (std::size_t j = 0; j < bb.size(); ++j) out[i].push_back(to_string(g.at(i, j)));
        }
        return out;
      },
      py::arg("phi_aa_values"), py::arg("phi_bb_values"), py::arg("phi_ab"), py::arg("phi_ba"));

  // lattice model
  m.def(
      "simulate",
      [](const RateSet& r, const std::vector<int>& sides, double t_end, std::uint64_t seed,
         double sample_interval, const std::string& initial, double p, const std::string& genotype,
         const std::string& fill, const std::string& background, int N,
         const std::string& boundary, const std::string& exterior_low,
         const std::string& exterior_high) {
        const Lattice lat = make_lattice(sides, boundary, exterior_low, exterior_high);
        const InitialCondition ic = make_initial(initial, p, genotype, fill, background, N);
        std::vector<Genotype> final_sites;
        std::uint64_t events = 0;
        ObservableSeries s;
        {
          py::gil_scoped_release release;
          GillespieEngine e(initial_state(ic, lat, seed), r);
          s = run_until(e, t_end, density_sampler(sample_interval));
          final_sites = e.state().sites;
          events = e.events();
        }
        py::dict d = series_dict(s);
        d["final"] = genotype_codes(final_sites);
        d["events"] = events;
        return d;
      },
      py::arg("rates"), py::arg("sides"), py::arg("t_end"), py::arg("seed") = 0,
      py::arg("sample_interval") = 1.0, py::arg("initial") = "bernoulli_genes",
      py::arg("p") = 0.5, py::arg("genotype") = "AA", py::arg("fill") = "BB",
      py::arg("background") = "AA", py::arg("N") = 0, py::arg("boundary") = "torus",
      py::arg("exterior_low") = "AA", py::arg("exterior_high") = "AA");

  m.def(
      "encode_pgm",
      [](const std::vector<int>& sides, const std::vector<int>& codes) {
        const Lattice lat(sides, Boundary::torus());
        std::vector<Genotype> g(codes.size());
        for (std::size_t i = 0; i < codes.size(); ++i) {
          if (codes[i] < 0 || codes[i] > 2) throw UsageError("genotype codes are 0, 1, 2");
          g[i] = static_cast<Genotype>(codes[i]);
        }
        if (g.size() != lat.size()) throw UsageError("one code per site is required");
        return py::bytes(encode_pgm(make_snapshot(LatticeState(lat, g, 0))));
      },
      py::arg("sides"), py::arg("genotypes"));

  m.def(
      "coupled",
      [](const RateSet& r, int sites, double T, std::uint64_t seed, double keep) {
        const Lattice lat = ring(sites);
        const auto xi = initial_genes(InitialCondition::bernoulli_genes(0.5), lat,
                                      derive_seed(seed, 1));
        const auto zeta = thin_a_genes(xi, keep, derive_seed(seed, 2));
        const CoupledRun run = run_coupled(lat, r, xi, zeta, T, derive_seed(seed, 3));
        py::dict d;
        d["case"] = coupling_case(r);
        d["events"] = run.events;
        d["checks"] = run.checks;
        d["violations"] = run.violations;
        return d;
      },
      py::arg("rates"), py::arg("sites") = 20, py::arg("T") = 10.0, py::arg("seed") = 0,
      py::arg("keep") = 0.5);

  m.def(
      "equivalence_check",
      [](const RateSet& r, int sites, double T, std::uint64_t seed, const std::string& mode,
         std::size_t replicates) {
        if (mode != "coupled" && mode != "statistical") {
          throw UsageError("mode must be 'coupled' or 'statistical'");
        }
        const EquivalenceMode md =
            mode == "coupled" ? EquivalenceMode::coupled : EquivalenceMode::statistical;
        const auto rep = genotype_gene_equivalence_check(
            r, ring(sites), InitialCondition::bernoulli_genes(0.5), T, seed, md, replicates);
        py::dict d;
        d["passed"] = rep.passed();
        d["configurations"] = rep.configurations;
        d["max_rate_error"] = rep.max_rate_error;
        d["chi_square"] = rep.chi_square.statistic;
        d["dof"] = rep.chi_square.dof;
        return d;
      },
      py::arg("rates"), py::arg("sites") = 20, py::arg("T") = 5.0, py::arg("seed") = 0,
      py::arg("mode") = "coupled", py::arg("replicates") = 1000);

  // theory
  m.def(
      "hitting_probability",
      [](int d, double aa, double bb, int K) {
        return hitting_probability(invasion_params(d, aa, bb), K);
      },
      py::arg("d"), py::arg("phi_aa"), py::arg("phi_bb"), py::arg("K"));
  m.def(
      "invasion_walk",
      [](int d, double aa, double bb, int K, std::uint64_t walks, std::uint64_t seed) {
        const auto res = invasion_walk(invasion_params(d, aa, bb), K, walks, seed);
        py::dict out;
        out["closed_form"] = res.closed_form;
        out["empirical"] = res.empirical;
        out["stderr"] = res.stderr_;
        out["hits"] = res.hits;
        out["walks"] = res.walks;
        return out;
      },
      py::arg("d"), py::arg("phi_aa"), py::arg("phi_bb"), py::arg("K"), py::arg("walks"),
      py::arg("seed") = 0);
  m.def("condition4_threshold", &condition4_threshold, py::arg("d"));
  m.def("condition5_check", &condition5_check, py::arg("rates"));
  m.def("fixation_speed_bound", &fixation_speed_bound, py::arg("rates"));
  m.def("path_tail_bound", &path_tail_bound, py::arg("N"), py::arg("d"), py::arg("c"));

  // configuration text
  m.def(
      "parse_config",
      [](const std::string& text) { return emit_config(parse_config(text)); }, py::arg("text"),
      "Validate configuration text; returns its canonical form.");
  m.def(
      "emit_config",
      [](const std::string& text) { return emit_config(parse_config(text)); }, py::arg("text"));

  m.def(
      "acceptance",
      [](const std::vector<int>& ids, std::uint64_t seed, unsigned threads) {
        acceptance::Options opt;
        opt.seed = seed;
        opt.threads = threads;
        std::vector<acceptance::CriterionResult> res;
        {
          py::gil_scoped_release release;
          res = acceptance::run(ids.empty() ? acceptance::all_criteria() : ids, opt);
        }
        py::list out;
        for (const auto& r : res) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("criteria") = std::vector<int>{}, py::arg("seed") = acceptance::Options{}.seed,
      py::arg("threads") = 0);
}
