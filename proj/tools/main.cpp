#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace diploid::cli;
  CLI::App app{"Spatial diploid meiotic-drive model: simulation and analysis"};
  app.require_subcommand(1);

  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  unsigned threads = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Run the lattice model and write series and snapshots"},
      {"meanfield", "Integrate the mean-field system and report its fixed points"},
      {"phase-sweep", "Classify mean-field regimes over a (phi_aa, phi_bb) grid"},
      {"coupled", "Run the gene process and the biased voter model on shared arrows"},
      {"walk", "Hitting probability of the invasion walk, closed form and Monte Carlo"},
      {"verify", "Run the acceptance suite"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Configuration file (key = value lines)");
    sub->add_option("--seed", seed, "Master seed, overrides the config");
    sub->add_option("--out", out, "Output directory, overrides the config");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage_error;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  RunOptions opt;
  opt.seed = seed;
  opt.out = out;
  opt.threads = threads;
  return run_guarded(command, config, opt, std::cout, std::cerr);
}
