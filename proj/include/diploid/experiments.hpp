#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diploid/mean_field.hpp"
#include "diploid/parallel.hpp"
#include "diploid/rng.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// Run `fn(seed_i)` for replicate i = 0..n-1 with seed_i = derive_seed(master, i).
template <class Result, class Fn>
std::vector<Result> run_replicates(std::size_t n, std::uint64_t master, unsigned threads, Fn&& fn) {
  std::vector<Result> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = fn(derive_seed(master, i)); });
  return out;
}

/// Heterozygote process on a ring (phi_aa = phi_bb = 0, phi_ab = phi_ba = phi)
/// from a Bernoulli(p) start; time averages over [t_burn, t_end].
struct AbpStationaryParams {
  int sites = 1000;
  double phi = 1.0;
  double p = 0.5;
  double t_burn = 500.0;
  double t_end = 2000.0;
};

struct AbpStationaryResult {
  double mean_density = 0.0;      // time-averaged fraction of heterozygotes
  double gap_zero_fraction = 0.0; // time fraction with G_t = 0 for the tagged edge
  double tracked_time = 0.0;      // time the tagged edge was defined
  long edge_displacement = 0;
  std::uint64_t events = 0;
};

AbpStationaryResult abp_stationary_run(const AbpStationaryParams& p, std::uint64_t seed);

/// Single heterozygote at the origin of a window with frozen AA exterior.
struct EdgeSpeedParams {
  int window = 6000;
  double phi_ab = 1.0;
  double phi_ba = 1.0;
  double t_end = 2000.0;
};

struct EdgeSpeedResult {
  long x_plus = 0;
  double speed = 0.0;
  bool clamped = false;  // the edge reached the end of the window
};

EdgeSpeedResult edge_speed_run(const EdgeSpeedParams& p, std::uint64_t seed);

/// Half-line AA start (AA exterior on the left, BB fill and exterior on the
/// right); measures r_t / t.
struct FixationDriftParams {
  RateSet rates{4.0, 1.0, 1.0, 1.0};
  int window = 4000;
  int origin = 500;  // index of coordinate 0 inside the window
  double t_end = 1000.0;
};

struct FixationDriftResult {
  long r = 0;
  double speed = 0.0;
  bool clamped = false;
};

FixationDriftResult fixation_drift_run(const FixationDriftParams& p, std::uint64_t seed);

/// Ring with its first half AA and the rest BB, run until absorbed or t_end.
struct AbsorptionParams {
  RateSet rates{3.0, 3.0, 1.0, 1.0};
  int sites = 200;
  double t_end = 2000.0;
};

struct AbsorptionResult {
  bool all_aa = false;
  bool all_bb = false;
  double time = 0.0;  // absorption time, or t_end
};

AbsorptionResult half_aa_absorption_run(const AbsorptionParams& p, std::uint64_t seed);

/// Square torus from a Bernoulli(p)-per-gene start, observed at `times`.
struct TorusRunParams {
  RateSet rates{4.0, 5.0, 5.0, 4.0};
  int side = 200;
  double p = 0.5;
  std::vector<double> times{50.0};
};

struct TorusRunResult {
  std::vector<double> times;
  std::vector<MeanFieldState> densities;
  std::vector<double> cluster_sizes;
};

TorusRunResult torus_run(const TorusRunParams& p, std::uint64_t seed);

/// Block propagation for the heterozygote process on a ring of ring_factor N
/// sites with time step T = time_factor N, started from one particle at the
/// origin. Empty if the outcome is undefined.
struct PropagationParams {
  int N = 16;
  double phi = 1.0;
  int ring_factor = 8;
  double time_factor = 2.0;
};

std::optional<bool> propagation_run(const PropagationParams& p, std::uint64_t seed);

struct PropagationEstimate {
  std::size_t replicates = 0;
  std::size_t successes = 0;
  double frequency = 0.0;
  double stderr_ = 0.0;
};

PropagationEstimate propagation_frequency(const PropagationParams& p, std::size_t replicates,
                                          std::uint64_t seed, unsigned threads = 0);

/// Fixation frequency against phi_aa at a fixed ratio phi_aa / phi_bb, on a
/// one-dimensional ring from a Bernoulli(1/2)-per-gene start. No threshold is
/// attached: this is an exploratory sweep.
struct FixationSweepParams {
  std::vector<double> phi_aa_values{1.0, 2.0, 4.0, 8.0};
  double ratio = 2.0;
  double phi_ab = 1.0;
  double phi_ba = 1.0;
  int sites = 200;
  double t_end = 1000.0;
  std::size_t replicates = 20;
};

struct FixationSweepPoint {
  double phi_aa = 0.0;
  double phi_bb = 0.0;
  std::size_t replicates = 0;
  std::size_t fixed_a = 0;
  std::size_t fixed_b = 0;
  double frequency_a = 0.0;
};

std::vector<FixationSweepPoint> fixation_sweep(const FixationSweepParams& p, std::uint64_t seed,
                                               unsigned threads = 0);

}  // namespace diploid
