#pragma once

#include <cstdint>
#include <string>

#include "diploid/types.hpp"

namespace diploid {

/// lim sup P(G_t = 0) <= 2d / (2d + 1).
double gap_occupancy_bound(int d);

/// Lower bound phi_ab / (2d + 1) on the edge drift.
double edge_drift_bound(double phi_ab, int d);

/// (2 phi_ba^2 + 5 phi_ab phi_ba - 3 phi_ab^2) / (2 (4 phi_ab + phi_ba)).
/// Requires phi_ab >= phi_ba; callers with the other order swap arguments.
double edge_speed_bound(double phi_ab, double phi_ba);

/// 6 d^2 (1 + sqrt(1 + 2/d)).
double condition4_threshold(int d);
/// phi_aa > condition4_threshold(d) * phi_bb.
bool check4(const RateSet& rates, int d);

/// phi_aa > phi_bb + phi_ba + sqrt(phi_bb phi_ba).
bool condition5_check(const RateSet& rates);
/// (phi_aa^2 - (phi_bb + phi_ba) phi_aa - phi_bb phi_ba) / (2 phi_aa + phi_bb).
double fixation_speed_bound(const RateSet& rates);

enum class Condition6 : std::uint8_t { satisfied_modulo_small_phi_bb, not_satisfied };
std::string to_string(Condition6 c);
/// phi_aa > max(2 phi_ba / 5, phi_ba - phi_ab / 6). The requirement that
/// phi_bb be small is not quantified and is reported only as a caveat.
Condition6 condition6_check(const RateSet& rates);

/// Random walk on the half-integers bounding the invasion path: from Y it
/// moves to floor(Y) + 1 with probability r and to Y - 1/2 with probability l.
struct InvasionWalkParams {
  double r = 0.5;
  double l = 0.5;
  int d = 1;
  double phi_aa = 0.0;
  double phi_bb = 0.0;

  double c() const noexcept { return l * l / r; }
};

/// r = 6 d phi_bb / (phi_aa + 6 d phi_bb), l = 1 - r.
InvasionWalkParams invasion_params(int d, double phi_aa, double phi_bb);
/// Params straight from r (d and the rates left at their defaults).
InvasionWalkParams walk_from_r(double r);

/// P(hit K before -1 | Y_0 = 0) = (c - 1) / (c^(K+1) - 1); 1/(K+1) at c = 1.
/// Throws DegenerateWalk when r is 0 or 1.
double hitting_probability(const InvasionWalkParams& p, int K);

struct InvasionWalkResult {
  std::uint64_t walks = 0;
  std::uint64_t hits = 0;
  double empirical = 0.0;
  double stderr_ = 0.0;
  double closed_form = 0.0;
};

/// Monte Carlo estimate alongside the closed form.
InvasionWalkResult invasion_walk(const InvasionWalkParams& p, int K, std::uint64_t n_walks,
                                 std::uint64_t seed);

/// Mean and standard error of c^(Y_{n+1} - Y_n) - 1 over `steps` steps of the
/// walk observed at integer times (the chain moves +1 w.p. r, stays w.p. l r,
/// moves -1 w.p. l^2). This is the normalized increment of the martingale c^Y.
struct MartingaleCheck {
  std::uint64_t steps = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
};
MartingaleCheck martingale_increments(const InvasionWalkParams& p, std::uint64_t steps,
                                      std::uint64_t seed);

/// sum_{L >= N} ((2L+3)^d - (2L+1)^d) (c / (c - 2d)) (2d / c)^L, to relative
/// tail error 1e-12. Throws DivergentBound when c <= 2d.
double path_tail_bound(int N, int d, double c);

}  // namespace diploid
