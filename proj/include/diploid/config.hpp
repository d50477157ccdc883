#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diploid/initial_condition.hpp"
#include "diploid/lattice.hpp"
#include "diploid/mean_field.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// One experiment, read from `key = value` text. See README for the keys.
struct ExperimentConfig {
  std::string command;

  std::optional<double> phi_aa, phi_ab, phi_ba, phi_bb;

  // lattice
  int dimension = 1;
  std::vector<int> sides;
  BoundaryKind boundary = BoundaryKind::torus;
  Genotype exterior_low = Genotype::AA;
  Genotype exterior_high = Genotype::AA;
  std::vector<int> origin;  // empty: centre of the box

  InitialCondition initial;

  std::optional<double> t_end;
  double sample_interval = 1.0;
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string engine = "gillespie";  // or "arrows"
  bool snapshots = false;

  // meanfield
  MeanFieldState state0{1.0, 0.0, 0.0};
  double step = 1e-3;

  // phase-sweep
  double aa_min = 0.0, aa_max = 2.0, bb_min = 0.0, bb_max = 2.0;
  int grid_aa = 50, grid_bb = 50;

  // walk
  int walk_K = 5;
  std::uint64_t walks = 1000000;

  // coupled: zeta starts as "dominated" (each a gene of xi kept with
  // probability zeta_p, others b), "all_b" or "copy" (zeta = xi)
  std::string zeta_initial = "dominated";
  double zeta_p = 0.5;

  // verify: criteria to run (empty = all)
  std::vector<int> criteria;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

  /// Throws UsageError when a rate is missing or the set is invalid.
  RateSet rates() const;
  /// Throws UsageError when the lattice keys are incomplete.
  Lattice lattice() const;
};

/// Parse and validate. Throws ConfigError (with the line number) on syntax
/// errors, unknown or repeated keys, bad values and missing required keys.
ExperimentConfig parse_config(const std::string& text);

/// As above, for a known command: a missing `command` key is filled in and a
/// different one is an error.
ExperimentConfig parse_config(const std::string& text, const std::string& command);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

/// Command-dependent checks (required keys, value ranges).
void validate_config(const ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path, const std::string& command = "");

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> k{"simulate", "meanfield", "phase-sweep",
                                          "coupled",  "walk",      "verify"};
  return k;
}

}  // namespace diploid
