#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diploid/lattice_engine.hpp"

namespace diploid {

/// Gray level of a genotype in snapshots: AA white, AB grey, BB black.
constexpr std::uint8_t gray_level(Genotype g) noexcept {
  switch (g) {
    case Genotype::AA:
      return 255;
    case Genotype::AB:
      return 128;
    case Genotype::BB:
      break;
  }
  return 0;
}

struct Snapshot {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> gray;  // row-major, origin top-left
};

/// d = 1: one row; d = 2: axis 0 across, axis 1 down; d > 2: the axis-0/1
/// slice through the origin.
Snapshot make_snapshot(const LatticeState& state);

/// Rows of one-dimensional configurations stacked top to bottom (space-time raster).
Snapshot make_raster(const std::vector<std::vector<Genotype>>& rows);

/// Binary PGM (P5, maxval 255).
std::string encode_pgm(const Snapshot& snap);

/// CSV with a header row; numbers with 12 significant digits.
std::string encode_csv(const ObservableSeries& series);

/// Write via a temporary file in the same directory and rename on success,
/// so a failed write never leaves a partial file. Throws std::runtime_error
/// naming the path.
void write_file_atomic(const std::string& path, const std::string& content);

void write_snapshot(const LatticeState& state, const std::string& path);
void write_series(const ObservableSeries& series, const std::string& path);

/// 12-significant-digit formatting used by every text output.
std::string format_number(double x);

}  // namespace diploid
