#include "diploid/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "diploid/errors.hpp"

namespace diploid {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("malformed number '" + v + "' for " + key, line);
  }
  return out;
}

double non_negative(const std::string& key, const std::string& v, int line) {
  const double x = parse_double(key, v, line);
  if (x < 0.0) throw ConfigError(key + " must be non-negative, got " + v, line);
  return x;
}

double positive(const std::string& key, const std::string& v, int line) {
  const double x = parse_double(key, v, line);
  if (!(x > 0.0)) throw ConfigError(key + " must be positive, got " + v, line);
  return x;
}

std::int64_t parse_int(const std::string& key, const std::string& v, int line) {
  std::int64_t out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("malformed integer '" + v + "' for " + key, line);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v, int line) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("malformed unsigned integer '" + v + "' for " + key, line);
  }
  return out;
}

int small_int(const std::string& key, const std::string& v, int line, std::int64_t lo) {
  const auto x = parse_int(key, v, line);
  if (x < lo || x > 1'000'000'000) {
    throw ConfigError(key + " must be an integer >= " + std::to_string(lo) + ", got " + v, line);
  }
  return static_cast<int>(x);
}

std::vector<int> int_list(const std::string& key, const std::string& v, int line,
                          std::int64_t lo) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(small_int(key, trim(item), line, lo));
  if (out.empty()) throw ConfigError(key + " needs at least one value", line);
  return out;
}

Genotype genotype_value(const std::string& key, const std::string& v, int line) {
  try {
    return parse_genotype(v);
  } catch (const UsageError&) {
    throw ConfigError("bad genotype '" + v + "' for " + key + " (expected AA, AB or BB)", line);
  }
}

bool bool_value(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean '" + v + "' for " + key, line);
}

std::string fmt(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = [] {
    std::map<std::string, Setter> s;
    s["command"] = [](ExperimentConfig& c, const std::string& v, int line) {
      const auto& k = known_commands();
      if (std::find(k.begin(), k.end(), v) == k.end()) {
        throw ConfigError("unknown command '" + v + "'", line);
      }
      c.command = v;
    };
    s["phi_aa"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.phi_aa = non_negative("phi_aa", v, l);
    };
    s["phi_ab"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.phi_ab = non_negative("phi_ab", v, l);
    };
    s["phi_ba"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.phi_ba = non_negative("phi_ba", v, l);
    };
    s["phi_bb"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.phi_bb = non_negative("phi_bb", v, l);
    };
    s["dimension"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.dimension = small_int("dimension", v, l, 1);
    };
    s["sides"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.sides = int_list("sides", v, l, 1);
    };
    s["boundary"] = [](ExperimentConfig& c, const std::string& v, int l) {
      if (v == "torus") {
        c.boundary = BoundaryKind::torus;
      } else if (v == "frozen") {
        c.boundary = BoundaryKind::frozen;
      } else {
        throw ConfigError("boundary must be torus or frozen, got '" + v + "'", l);
      }
    };
    s["exterior_low"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.exterior_low = genotype_value("exterior_low", v, l);
    };
    s["exterior_high"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.exterior_high = genotype_value("exterior_high", v, l);
    };
    s["origin"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.origin = int_list("origin", v, l, 0);
    };
    s["initial"] = [](ExperimentConfig& c, const std::string& v, int l) {
      try {
        c.initial.kind = parse_initial_kind(v);
      } catch (const UsageError& e) {
        throw ConfigError(e.what(), l);
      }
    };
    s["initial_genotype"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.initial.genotype = genotype_value("initial_genotype", v, l);
    };
    s["initial_fill"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.initial.fill = genotype_value("initial_fill", v, l);
    };
    s["initial_background"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.initial.background = genotype_value("initial_background", v, l);
    };
    s["initial_p"] = [](ExperimentConfig& c, const std::string& v, int l) {
      const double p = non_negative("initial_p", v, l);
      if (p > 1.0) throw ConfigError("initial_p must lie in [0, 1], got " + v, l);
      c.initial.p = p;
    };
    s["initial_N"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.initial.N = small_int("initial_N", v, l, 0);
    };
    s["initial_site"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.initial.site = int_list("initial_site", v, l, -1'000'000'000);
    };
    s["t_end"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.t_end = non_negative("t_end", v, l);
    };
    s["sample_interval"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.sample_interval = positive("sample_interval", v, l);
    };
    s["replicates"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.replicates = parse_u64("replicates", v, l);
      if (c.replicates == 0) throw ConfigError("replicates must be at least 1", l);
    };
    s["seed"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.seed = parse_u64("seed", v, l);
    };
    s["output_dir"] = [](ExperimentConfig& c, const std::string& v, int) { c.output_dir = v; };
    s["engine"] = [](ExperimentConfig& c, const std::string& v, int l) {
      if (v != "gillespie" && v != "arrows") {
        throw ConfigError("engine must be gillespie or arrows, got '" + v + "'", l);
      }
      c.engine = v;
    };
    s["snapshots"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.snapshots = bool_value("snapshots", v, l);
    };
    s["u_aa"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.state0.u_aa = non_negative("u_aa", v, l);
    };
    s["u_ab"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.state0.u_ab = non_negative("u_ab", v, l);
    };
    s["u_bb"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.state0.u_bb = non_negative("u_bb", v, l);
    };
    s["step"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.step = positive("step", v, l);
    };
    s["aa_min"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.aa_min = non_negative("aa_min", v, l);
    };
    s["aa_max"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.aa_max = non_negative("aa_max", v, l);
    };
    s["bb_min"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.bb_min = non_negative("bb_min", v, l);
    };
    s["bb_max"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.bb_max = non_negative("bb_max", v, l);
    };
    s["grid_aa"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.grid_aa = small_int("grid_aa", v, l, 1);
    };
    s["grid_bb"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.grid_bb = small_int("grid_bb", v, l, 1);
    };
    s["walk_K"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.walk_K = small_int("walk_K", v, l, 0);
    };
    s["walks"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.walks = parse_u64("walks", v, l);
    };
    s["zeta_initial"] = [](ExperimentConfig& c, const std::string& v, int l) {
      if (v != "dominated" && v != "all_b" && v != "copy") {
        throw ConfigError("zeta_initial must be dominated, all_b or copy, got '" + v + "'", l);
      }
      c.zeta_initial = v;
    };
    s["zeta_p"] = [](ExperimentConfig& c, const std::string& v, int l) {
      const double p = non_negative("zeta_p", v, l);
      if (p > 1.0) throw ConfigError("zeta_p must lie in [0, 1], got " + v, l);
      c.zeta_p = p;
    };
    s["criteria"] = [](ExperimentConfig& c, const std::string& v, int l) {
      c.criteria = int_list("criteria", v, l, 1);
      for (int k : c.criteria) {
        if (k > 13) throw ConfigError("criteria are numbered 1 to 13", l);
      }
    };
    return s;
  }();
  return m;
}

void require(bool present, const std::string& key, const std::string& command) {
  if (!present) throw ConfigError("missing required key '" + key + "' for " + command, 0);
}

}  // namespace

RateSet ExperimentConfig::rates() const {
  if (!phi_aa || !phi_ab || !phi_ba || !phi_bb) {
    throw UsageError("all four rates phi_aa, phi_ab, phi_ba, phi_bb are required");
  }
  return make_rates(*phi_aa, *phi_ab, *phi_ba, *phi_bb);
}

Lattice ExperimentConfig::lattice() const {
  if (sides.empty()) throw UsageError("sides is required");
  const Boundary b = boundary == BoundaryKind::torus ? Boundary::torus()
                                                      : Boundary::frozen(exterior_low, exterior_high);
  Lattice lat(sides, b);
  if (!origin.empty()) lat.set_origin(origin);
  return lat;
}

void validate_config(const ExperimentConfig& c) {
  if (c.command.empty()) throw ConfigError("missing required key 'command'", 0);
  const std::string& cmd = c.command;
  const bool needs_rates = cmd == "simulate" || cmd == "meanfield" || cmd == "coupled";
  const bool needs_lattice = cmd == "simulate" || cmd == "coupled";
  if (needs_rates) {
    require(c.phi_aa.has_value(), "phi_aa", cmd);
    require(c.phi_ab.has_value(), "phi_ab", cmd);
    require(c.phi_ba.has_value(), "phi_ba", cmd);
    require(c.phi_bb.has_value(), "phi_bb", cmd);
    try {
      c.rates();
    } catch (const UsageError& e) {
      throw ConfigError(e.what(), 0);
    }
  }
  if (needs_rates) require(c.t_end.has_value(), "t_end", cmd);
  if (needs_lattice) {
    require(!c.sides.empty(), "sides", cmd);
    if (static_cast<int>(c.sides.size()) != c.dimension) {
      throw ConfigError("sides lists " + std::to_string(c.sides.size()) +
                            " lengths but dimension is " + std::to_string(c.dimension),
                        0);
    }
    if (!c.origin.empty() && c.origin.size() != c.sides.size()) {
      throw ConfigError("origin must have one coordinate per axis", 0);
    }
    try {
      c.lattice();
    } catch (const UsageError& e) {
      throw ConfigError(e.what(), 0);
    }
  }
  if (cmd == "meanfield") {
    try {
      validate_simplex(c.state0);
    } catch (const UsageError& e) {
      throw ConfigError(std::string("u_aa, u_ab, u_bb: ") + e.what(), 0);
    }
  }
  if (cmd == "phase-sweep") {
    require(c.phi_ab.has_value(), "phi_ab", cmd);
    require(c.phi_ba.has_value(), "phi_ba", cmd);
    if (c.aa_min > c.aa_max || c.bb_min > c.bb_max) {
      throw ConfigError("sweep ranges need min <= max", 0);
    }
  }
  if (cmd == "walk") {
    require(c.phi_aa.has_value(), "phi_aa", cmd);
    require(c.phi_bb.has_value(), "phi_bb", cmd);
  }
}

namespace {

ExperimentConfig parse_unvalidated(const std::string& text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line);
    if (!seen.insert(key).second) throw ConfigError("key '" + key + "' given twice", line);
    if (value.empty() && key != "output_dir") {
      throw ConfigError("key '" + key + "' has no value", line);
    }
    it->second(c, value, line);
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c = parse_unvalidated(text);
  validate_config(c);
  return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& command) {
  ExperimentConfig c = parse_unvalidated(text);
  if (c.command.empty()) {
    setters().at("command")(c, command, 0);
  } else if (c.command != command) {
    throw ConfigError("config is for '" + c.command + "', not '" + command + "'", 0);
  }
  validate_config(c);
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  kv("command", c.command);
  if (c.phi_aa) kv("phi_aa", fmt(*c.phi_aa));
  if (c.phi_ab) kv("phi_ab", fmt(*c.phi_ab));
  if (c.phi_ba) kv("phi_ba", fmt(*c.phi_ba));
  if (c.phi_bb) kv("phi_bb", fmt(*c.phi_bb));
  kv("dimension", std::to_string(c.dimension));
  if (!c.sides.empty()) kv("sides", join(c.sides));
  kv("boundary", c.boundary == BoundaryKind::torus ? "torus" : "frozen");
  kv("exterior_low", std::string(to_string(c.exterior_low)));
  kv("exterior_high", std::string(to_string(c.exterior_high)));
  if (!c.origin.empty()) kv("origin", join(c.origin));
  kv("initial", to_string(c.initial.kind));
  kv("initial_genotype", std::string(to_string(c.initial.genotype)));
  kv("initial_fill", std::string(to_string(c.initial.fill)));
  kv("initial_background", std::string(to_string(c.initial.background)));
  kv("initial_p", fmt(c.initial.p));
  kv("initial_N", std::to_string(c.initial.N));
  if (!c.initial.site.empty()) kv("initial_site", join(c.initial.site));
  if (c.t_end) kv("t_end", fmt(*c.t_end));
  kv("sample_interval", fmt(c.sample_interval));
  kv("replicates", std::to_string(c.replicates));
  kv("seed", std::to_string(c.seed));
  if (!c.output_dir.empty()) kv("output_dir", c.output_dir);
  kv("engine", c.engine);
  kv("snapshots", c.snapshots ? "true" : "false");
  kv("u_aa", fmt(c.state0.u_aa));
  kv("u_ab", fmt(c.state0.u_ab));
  kv("u_bb", fmt(c.state0.u_bb));
  kv("step", fmt(c.step));
  kv("aa_min", fmt(c.aa_min));
  kv("aa_max", fmt(c.aa_max));
  kv("bb_min", fmt(c.bb_min));
  kv("bb_max", fmt(c.bb_max));
  kv("grid_aa", std::to_string(c.grid_aa));
  kv("grid_bb", std::to_string(c.grid_bb));
  kv("walk_K", std::to_string(c.walk_K));
  kv("walks", std::to_string(c.walks));
  kv("zeta_initial", c.zeta_initial);
  kv("zeta_p", fmt(c.zeta_p));
  if (!c.criteria.empty()) kv("criteria", join(c.criteria));
  return o.str();
}

ExperimentConfig load_config(const std::string& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return command.empty() ? parse_config(ss.str()) : parse_config(ss.str(), command);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), 0);
  }
}

}  // namespace diploid
