#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "diploid/config.hpp"
#include "diploid/errors.hpp"
#include "diploid/io.hpp"
#include "diploid/rng.hpp"

using namespace diploid;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("diploid_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const char* kTorusLeft = R"(# torus, coexistence rates
command = simulate
phi_aa = 4
phi_ab = 5
phi_ba = 5
phi_bb = 4
dimension = 2
sides = 400, 400
boundary = torus
initial = bernoulli_genes
initial_p = 0.5
t_end = 50
)";

}  // namespace

TEST_CASE("minimal config gets the defaults") {
  const auto c = parse_config("command = phase-sweep\nphi_ab = 1\nphi_ba = 1\n");
  CHECK(c.sample_interval == 1.0);
  CHECK(c.replicates == 1);
  CHECK(c.seed == 0);
}

TEST_CASE("torus reproduction config is accepted") {
  const auto c = parse_config(kTorusLeft);
  CHECK(c.dimension == 2);
  CHECK(c.sides == std::vector<int>{400, 400});
  CHECK(c.initial.kind == InitialKind::bernoulli_genes);
  CHECK(c.rates() == RateSet{4, 5, 5, 4});
  CHECK(*c.t_end == 50.0);
}

TEST_CASE("config errors carry line numbers and key names") {
  try {
    parse_config("command = simulate\n\nphi_aa = -1\n");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("phi_aa") != std::string::npos);
  }
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("command = walk\nphi_aaa = 1\n") == 2);
  CHECK(line_of("command = walk\nphi_aa = 1x\n") == 2);
  CHECK(line_of("command = walk\nphi_aa = 1\nphi_aa = 2\n") == 3);
  CHECK(line_of("command = walk\njust words\n") == 2);
  CHECK(line_of("command = nope\n") == 1);
  CHECK(line_of("command = walk\nphi_aa = 1\n") == 0);  // phi_bb missing
  CHECK_THROWS_AS(parse_config("command = simulate\nphi_aa=1\nphi_ab=1\nphi_ba=1\nphi_bb=1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("command = walk\nphi_aa = 1\nphi_bb = 1\n", "simulate"),
                  ConfigError);
  CHECK(parse_config("phi_aa = 1\nphi_bb = 1\n", "walk").command == "walk");
}

TEST_CASE("config round trip") {
  CounterRng rng(3);
  const auto base = parse_config(kTorusLeft);
  CHECK(parse_config(emit_config(base)) == base);
  for (int k = 0; k < 200; ++k) {
    ExperimentConfig c = base;
    c.phi_aa = rng.uniform() * 10;
    c.phi_bb = 1.0 / (1 + rng.below(1000));
    c.t_end = rng.uniform() * 1e3;
    c.sample_interval = 1e-3 + rng.uniform();
    c.seed = rng();
    c.replicates = 1 + rng.below(100);
    c.initial.p = rng.uniform();
    c.snapshots = rng.bernoulli(0.5);
    c.engine = rng.bernoulli(0.5) ? "arrows" : "gillespie";
    c.output_dir = "out dir/" + std::to_string(k);
    c.criteria = {1, 5, 13};
    const auto again = parse_config(emit_config(c));
    CHECK(again == c);
    CHECK(emit_config(again) == emit_config(c));
  }
}

TEST_CASE("PGM encoding") {
  const Lattice lat({2, 2}, Boundary::torus());
  const LatticeState s(lat, {Genotype::AA, Genotype::AB, Genotype::BB, Genotype::AA}, 1);
  const std::string pgm = encode_pgm(make_snapshot(s));
  const std::string header = "P5\n2 2\n255\n";
  REQUIRE(pgm.size() == header.size() + 4);
  CHECK(pgm.substr(0, header.size()) == header);
  const auto* b = reinterpret_cast<const unsigned char*>(pgm.data() + header.size());
  CHECK(b[0] == 255);
  CHECK(b[1] == 128);
  CHECK(b[2] == 0);
  CHECK(b[3] == 255);

  const Snapshot r = make_raster({{Genotype::AA, Genotype::BB}, {Genotype::AB, Genotype::AB}});
  CHECK(r.width == 2);
  CHECK(r.height == 2);
  CHECK(r.gray == std::vector<std::uint8_t>{255, 0, 128, 128});
}

TEST_CASE("CSV encoding") {
  ObservableSeries s;
  s.columns = {"time", "x"};
  CHECK(encode_csv(s) == "time,x\n");
  s.rows = {{0.5, 1.0 / 3.0}};
  CHECK(encode_csv(s) == "time,x\n0.5,0.333333333333\n");
}

TEST_CASE("atomic writes leave no partial file") {
  const fs::path dir = scratch("atomic");
  write_file_atomic((dir / "a.txt").string(), "hello");
  CHECK(slurp(dir / "a.txt") == "hello");
  CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
  CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "b.txt").string(), "x"),
                  std::runtime_error);
  CHECK_FALSE(fs::exists(dir / "missing"));
}

TEST_CASE("commands: exit codes and outputs") {
  const fs::path dir = scratch("cli");
  std::ostringstream log, err;
  cli::RunOptions opt;
  opt.out = (dir / "mf").string();
  spit(dir / "mf.conf",
       "command = meanfield\nphi_aa = 1\nphi_ab = 4\nphi_ba = 3\nphi_bb = 2\nt_end = 10\n"
       "u_aa = 0.6\nu_ab = 0.2\nu_bb = 0.2\n");
  CHECK(cli::run_guarded("meanfield", (dir / "mf.conf").string(), opt, log, err) == cli::ok);
  const std::string report = slurp(dir / "mf" / "report.json");
  CHECK(report.find("\"interior\"") != std::string::npos);
  CHECK(report.find("\"stable\"") != std::string::npos);
  CHECK(slurp(dir / "mf" / "trajectory.csv").rfind("time,u_aa,u_ab,u_bb", 0) == 0);

  spit(dir / "walk.conf", "phi_aa = 20\nphi_bb = 1\nwalk_K = 5\nwalks = 10000\n");
  log.str("");
  CHECK(cli::run_guarded("walk", (dir / "walk.conf").string(), {}, log, err) == cli::ok);
  CHECK(log.str().find("0.00552") != std::string::npos);

  spit(dir / "bad.conf", "command = walk\nphi_aa = -1\nphi_bb = 1\n");
  CHECK(cli::run_guarded("walk", (dir / "bad.conf").string(), {}, log, err) == cli::usage_error);
  CHECK(cli::run_guarded("walk", (dir / "nope.conf").string(), {}, log, err) == cli::usage_error);
  CHECK(cli::run_guarded("simulate", std::nullopt, {}, log, err) == cli::usage_error);

  spit(dir / "degenerate.conf", "phi_aa = 0\nphi_bb = 1\n");
  CHECK(cli::run_guarded("walk", (dir / "degenerate.conf").string(), {}, log, err) ==
        cli::usage_error);

  // an output path that cannot be created is a runtime failure
  spit(dir / "blocker", "");
  cli::RunOptions blocked;
  blocked.out = (dir / "blocker" / "sub").string();
  CHECK(cli::run_guarded("meanfield", (dir / "mf.conf").string(), blocked, log, err) ==
        cli::runtime_failure);

  spit(dir / "verify.conf", "criteria = 4, 13\n");
  CHECK(cli::run_guarded("verify", (dir / "verify.conf").string(), {}, log, err) == cli::ok);
}

TEST_CASE("simulate: all-AA start is a zero-event constant run") {
  const fs::path dir = scratch("sim_aa");
  spit(dir / "c.conf",
       "command = simulate\nphi_aa = 1\nphi_ab = 1\nphi_ba = 1\nphi_bb = 1\nsides = 30\n"
       "initial = all\ninitial_genotype = AA\nt_end = 5\n");
  cli::RunOptions opt;
  opt.out = (dir / "out").string();
  std::ostringstream log, err;
  REQUIRE(cli::run_guarded("simulate", (dir / "c.conf").string(), opt, log, err) == cli::ok);
  const std::string csv = slurp(dir / "out" / "series_0000.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "time,u_aa,u_ab,u_bb,mean_cluster_size");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.substr(line.find(',')) == ",1,0,0,30");
    ++rows;
  }
  CHECK(rows == 6);
  CHECK(slurp(dir / "out" / "summary.csv").find(",0\n") != std::string::npos);
}

TEST_CASE("simulate: seeded runs are byte-identical") {
  const fs::path dir = scratch("sim_det");
  for (const std::string engine : {"gillespie", "arrows"}) {
    spit(dir / "c.conf",
         "command = simulate\nphi_aa = 1\nphi_ab = 4\nphi_ba = 3\nphi_bb = 2\ndimension = 2\n"
         "sides = 16,12\ninitial = bernoulli_genes\nt_end = 3\nsample_interval = 0.5\n"
         "snapshots = true\nreplicates = 3\nseed = 99\nengine = " +
             engine + "\n");
    std::ostringstream log, err;
    cli::RunOptions a, b;
    a.out = (dir / (engine + "_a")).string();
    b.out = (dir / (engine + "_b")).string();
    b.threads = 2;
    REQUIRE(cli::run_guarded("simulate", (dir / "c.conf").string(), a, log, err) == cli::ok);
    REQUIRE(cli::run_guarded("simulate", (dir / "c.conf").string(), b, log, err) == cli::ok);
    int files = 0;
    for (const auto& f : fs::directory_iterator(a.out.value())) {
      CHECK(slurp(f.path()) == slurp(fs::path(*b.out) / f.path().filename()));
      ++files;
    }
    CHECK(files == 3 + 3 * 7 + 2);  // series, snapshots, summary, config

    // a different seed changes the output
    cli::RunOptions c = a;
    c.out = (dir / (engine + "_c")).string();
    c.seed = 100;
    REQUIRE(cli::run_guarded("simulate", (dir / "c.conf").string(), c, log, err) == cli::ok);
    CHECK(slurp(fs::path(*a.out) / "series_0000.csv") !=
          slurp(fs::path(*c.out) / "series_0000.csv"));
  }
}

TEST_CASE("simulate: one-dimensional runs give a space-time raster") {
  const fs::path dir = scratch("sim_raster");
  spit(dir / "c.conf",
       "command = simulate\nphi_aa = 1\nphi_ab = 4\nphi_ba = 3\nphi_bb = 2\nsides = 40\n"
       "initial = bernoulli_genes\nt_end = 9\nsnapshots = true\n");
  cli::RunOptions opt;
  opt.out = (dir / "out").string();
  std::ostringstream log, err;
  REQUIRE(cli::run_guarded("simulate", (dir / "c.conf").string(), opt, log, err) == cli::ok);
  const std::string pgm = slurp(dir / "out" / "raster_0000.pgm");
  CHECK(pgm.rfind("P5\n40 10\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n40 10\n255\n").size() + 400);
}

TEST_CASE("coupled command reports domination") {
  const fs::path dir = scratch("coupled");
  spit(dir / "c.conf",
       "phi_aa = 2\nphi_ab = 1\nphi_ba = 1\nphi_bb = 2\nsides = 20\ninitial = bernoulli_genes\n"
       "t_end = 5\nreplicates = 3\n");
  cli::RunOptions opt;
  opt.out = (dir / "out").string();
  std::ostringstream log, err;
  CHECK(cli::run_guarded("coupled", (dir / "c.conf").string(), opt, log, err) == cli::ok);
  CHECK(fs::exists(dir / "out" / "domination.csv"));
  CHECK(fs::exists(dir / "out" / "coupled_0002.csv"));
}
