#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "diploid/config.hpp"

namespace diploid::cli {

enum ExitCode : int { ok = 0, criterion_failed = 1, usage_error = 2, runtime_failure = 3 };

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config
  std::optional<std::string> out;     // overrides output_dir
  unsigned threads = 0;
};

/// Execute `config.command`. Errors propagate as exceptions; the return value
/// is ok or criterion_failed.
int run_command(ExperimentConfig config, const RunOptions& options, std::ostream& log);

/// Wraps run_command and maps exceptions to exit codes, printing them to `err`.
int run_guarded(const std::string& command, const std::optional<std::string>& config_path,
                const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace diploid::cli
