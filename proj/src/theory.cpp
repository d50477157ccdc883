#include "diploid/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diploid/errors.hpp"
#include "diploid/rng.hpp"

namespace diploid {

namespace {

void require_dimension(int d) {
  if (d < 1) throw UsageError("dimension must be at least 1");
}

void require_rate(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(name) + " must be a finite non-negative rate");
  }
}

}  // namespace

double gap_occupancy_bound(int d) {
  require_dimension(d);
  return 2.0 * d / (2.0 * d + 1.0);
}

double edge_drift_bound(double phi_ab, int d) {
  require_dimension(d);
  require_rate(phi_ab, "phi_ab");
  return phi_ab / (2.0 * d + 1.0);
}

double edge_speed_bound(double phi_ab, double phi_ba) {
  require_rate(phi_ab, "phi_ab");
  require_rate(phi_ba, "phi_ba");
  if (phi_ab < phi_ba) {
    throw UsageError("edge speed bound needs phi_ab >= phi_ba; swap the arguments");
  }
  if (phi_ab == 0.0) throw UsageError("edge speed bound needs a positive phi_ab");
  return (2.0 * phi_ba * phi_ba + 5.0 * phi_ab * phi_ba - 3.0 * phi_ab * phi_ab) /
         (2.0 * (4.0 * phi_ab + phi_ba));
}

double condition4_threshold(int d) {
  require_dimension(d);
  return 6.0 * d * d * (1.0 + std::sqrt(1.0 + 2.0 / d));
}

bool check4(const RateSet& r, int d) {
  r.validate();
  return r.phi_aa > condition4_threshold(d) * r.phi_bb;
}

bool condition5_check(const RateSet& r) {
  r.validate();
  return r.phi_aa > r.phi_bb + r.phi_ba + std::sqrt(r.phi_bb * r.phi_ba);
}

double fixation_speed_bound(const RateSet& r) {
  r.validate();
  const double den = 2.0 * r.phi_aa + r.phi_bb;
  if (den == 0.0) throw UsageError("fixation speed bound needs phi_aa or phi_bb positive");
  return (r.phi_aa * r.phi_aa - (r.phi_bb + r.phi_ba) * r.phi_aa - r.phi_bb * r.phi_ba) / den;
}

std::string to_string(Condition6 c) {
  return c == Condition6::satisfied_modulo_small_phi_bb ? "satisfied_modulo_small_phi_bb"
                                                        : "not_satisfied";
}

Condition6 condition6_check(const RateSet& r) {
  r.validate();
  const double bound = std::max(0.4 * r.phi_ba, r.phi_ba - r.phi_ab / 6.0);
  return r.phi_aa > bound ? Condition6::satisfied_modulo_small_phi_bb : Condition6::not_satisfied;
}

InvasionWalkParams invasion_params(int d, double phi_aa, double phi_bb) {
  require_dimension(d);
  require_rate(phi_aa, "phi_aa");
  require_rate(phi_bb, "phi_bb");
  const double den = phi_aa + 6.0 * d * phi_bb;
  if (den == 0.0) throw DegenerateWalk("phi_aa = phi_bb = 0 leaves the walk undefined");
  InvasionWalkParams p;
  p.d = d;
  p.phi_aa = phi_aa;
  p.phi_bb = phi_bb;
  p.r = 6.0 * d * phi_bb / den;
  p.l = phi_aa / den;
  return p;
}

InvasionWalkParams walk_from_r(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw UsageError("r must lie in [0, 1]");
  InvasionWalkParams p;
  p.r = r;
  p.l = 1.0 - r;
  return p;
}

namespace {

void require_nondegenerate(const InvasionWalkParams& p) {
  if (!(p.r > 0.0 && p.r < 1.0)) {
    throw DegenerateWalk("walk with r = " + std::to_string(p.r) + " never hits one of the ends");
  }
}

}  // namespace

double hitting_probability(const InvasionWalkParams& p, int K) {
  require_nondegenerate(p);
  if (K < 0) throw UsageError("K must be non-negative");
  const double c = p.c();
  if (c == 1.0) return 1.0 / (K + 1.0);
  // expm1 keeps precision when c is close to 1.
  const double lc = std::log(c);
  return std::expm1(lc) / std::expm1((K + 1.0) * lc);
}

InvasionWalkResult invasion_walk(const InvasionWalkParams& p, int K, std::uint64_t n_walks,
                                 std::uint64_t seed) {
  InvasionWalkResult res;
  res.closed_form = hitting_probability(p, K);
  res.walks = n_walks;
  CounterRng rng(seed);
  const long top = 2L * K;
  for (std::uint64_t w = 0; w < n_walks; ++w) {
    long y2 = 0;  // twice the position
    while (y2 < top && y2 > -2) {
      if (rng.uniform() < p.r) {
        // floor(Y) + 1, computed on the doubled scale
        const long fl = y2 >= 0 ? y2 / 2 : -((-y2 + 1) / 2);
        y2 = 2 * (fl + 1);
      } else {
        y2 -= 1;
      }
    }
    res.hits += y2 >= top;
  }
  if (n_walks > 0) {
    const double n = static_cast<double>(n_walks);
    res.empirical = static_cast<double>(res.hits) / n;
    res.stderr_ = std::sqrt(res.closed_form * (1.0 - res.closed_form) / n);
  }
  return res;
}

MartingaleCheck martingale_increments(const InvasionWalkParams& p, std::uint64_t steps,
                                      std::uint64_t seed) {
  require_nondegenerate(p);
  const double c = p.c();
  CounterRng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    // One integer-time step: up, or down to the half-integer and then up or down.
    double inc;
    if (rng.uniform() < p.r) {
      inc = c - 1.0;
    } else if (rng.uniform() < p.r) {
      inc = 0.0;
    } else {
      inc = 1.0 / c - 1.0;
    }
    sum += inc;
    sum2 += inc * inc;
  }
  MartingaleCheck m;
  m.steps = steps;
  if (steps > 1) {
    const double n = static_cast<double>(steps);
    m.mean = sum / n;
    const double var = (sum2 - n * m.mean * m.mean) / (n - 1.0);
    m.stderr_ = std::sqrt(std::max(var, 0.0) / n);
  }
  return m;
}

double path_tail_bound(int N, int d, double c) {
  require_dimension(d);
  if (N < 0) throw UsageError("N must be non-negative");
  if (std::isnan(c) || c <= 2.0 * d) {
    throw DivergentBound("path tail bound diverges for c <= 2d");
  }
  const auto shell = [d](double L) {
    return std::pow(2.0 * L + 3.0, d) - std::pow(2.0 * L + 1.0, d);
  };
  if (std::isinf(c)) return N == 0 ? shell(0.0) : 0.0;
  const double rho = 2.0 * d / c;
  const double pref = c / (c - 2.0 * d);
  const double log_rho = std::log(rho);

  double sum = 0.0;
  for (long L = N;; ++L) {
    const double term = pref * shell(static_cast<double>(L)) * std::exp(L * log_rho);
    if (term == 0.0) break;
    sum += term;
    const double next =
        pref * shell(static_cast<double>(L + 1)) * std::exp((L + 1) * log_rho);
    const double q = next / term;
    // Term ratios decrease towards rho, so the tail after `term` is at most
    // next / (1 - q) once q < 1.
    if (q < 1.0 && next / (1.0 - q) <= 1e-12 * sum) {
      sum += next;
      break;
    }
    if (L - N > 100000000L) break;
  }
  return sum;
}

}  // namespace diploid
