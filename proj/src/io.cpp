#include "diploid/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "diploid/errors.hpp"

namespace diploid {

namespace fs = std::filesystem;

Snapshot make_snapshot(const LatticeState& state) {
  const Lattice& lat = state.lattice;
  Snapshot s;
  s.width = lat.sides()[0];
  s.height = lat.dimension() >= 2 ? lat.sides()[1] : 1;
  s.gray.resize(static_cast<std::size_t>(s.width) * s.height);
  std::vector<int> c = lat.origin();
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      c[0] = x;
      if (lat.dimension() >= 2) c[1] = y;
      s.gray[static_cast<std::size_t>(y) * s.width + x] = gray_level(state.sites[lat.index(c)]);
    }
  }
  return s;
}

Snapshot make_raster(const std::vector<std::vector<Genotype>>& rows) {
  Snapshot s;
  s.height = static_cast<int>(rows.size());
  s.width = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  s.gray.reserve(static_cast<std::size_t>(s.width) * s.height);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != s.width) throw UsageError("raster rows differ in length");
    for (Genotype g : r) s.gray.push_back(gray_level(g));
  }
  return s;
}

std::string encode_pgm(const Snapshot& snap) {
  std::string out = "P5\n" + std::to_string(snap.width) + " " + std::to_string(snap.height) +
                    "\n255\n";
  out.append(snap.gray.begin(), snap.gray.end());
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string encode_csv(const ObservableSeries& series) {
  std::string out;
  for (std::size_t i = 0; i < series.columns.size(); ++i) {
    if (i) out += ',';
    out += series.columns[i];
  }
  out += '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
  }
}

void write_snapshot(const LatticeState& state, const std::string& path) {
  write_file_atomic(path, encode_pgm(make_snapshot(state)));
}

void write_series(const ObservableSeries& series, const std::string& path) {
  write_file_atomic(path, encode_csv(series));
}

}  // namespace diploid
