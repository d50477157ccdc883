#include "diploid/mean_field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "diploid/errors.hpp"

namespace diploid {

Vec3 rhs(const MeanFieldState& u, const RateSet& r) noexcept {
  const double x = u.u_aa, y = u.u_ab, z = u.u_bb;
  // Birth pressure of a genes and b genes.
  const double A = 2.0 * r.phi_aa * x + r.phi_ab * y;
  const double B = 2.0 * r.phi_bb * z + r.phi_ba * y;
  const double f1 = 0.5 * A * y - B * x;
  const double f3 = 0.5 * B * y - A * z;
  const double f2 = A * (z - 0.5 * y) + B * (x - 0.5 * y);
  return {f1, f2, f3};
}

Mat3 jacobian(const MeanFieldState& u, const RateSet& r) noexcept {
  const double x = u.u_aa, y = u.u_ab, z = u.u_bb;
  const double A = 2.0 * r.phi_aa * x + r.phi_ab * y;
  const double B = 2.0 * r.phi_bb * z + r.phi_ba * y;
  Mat3 J{};
  J[0] = {r.phi_aa * y - B, 0.5 * r.phi_ab * y + 0.5 * A - r.phi_ba * x, -2.0 * r.phi_bb * x};
  J[1] = {2.0 * r.phi_aa * (z - 0.5 * y) + B,
          r.phi_ab * (z - 0.5 * y) - 0.5 * A + r.phi_ba * (x - 0.5 * y) - 0.5 * B,
          A + 2.0 * r.phi_bb * (x - 0.5 * y)};
  J[2] = {-2.0 * r.phi_aa * z, 0.5 * r.phi_ba * y + 0.5 * B - r.phi_ab * z, r.phi_bb * y - A};
  return J;
}

std::array<std::complex<double>, 2> tangent_eigenvalues(const MeanFieldState& u,
                                                        const RateSet& r) {
  const Mat3 J = jacobian(u, r);
  // Tangent basis e1 = (1,-1,0), e2 = (0,1,-1); w = c1 e1 + c2 e2 has c1 = w1, c2 = -w3.
  auto apply = [&](const Vec3& v) {
    Vec3 w{};
    for (int i = 0; i < 3; ++i) w[i] = J[i][0] * v[0] + J[i][1] * v[1] + J[i][2] * v[2];
    return w;
  };
  const Vec3 j1 = apply({1.0, -1.0, 0.0});
  const Vec3 j2 = apply({0.0, 1.0, -1.0});
  const double m11 = j1[0], m21 = -j1[2], m12 = j2[0], m22 = -j2[2];
  const double tr = m11 + m22;
  const double det = m11 * m22 - m12 * m21;
  const double disc = 0.25 * tr * tr - det;
  std::array<std::complex<double>, 2> ev;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    ev = {std::complex<double>(0.5 * tr + s, 0.0), std::complex<double>(0.5 * tr - s, 0.0)};
  } else {
    const double s = std::sqrt(-disc);
    ev = {std::complex<double>(0.5 * tr, s), std::complex<double>(0.5 * tr, -s)};
  }
  return ev;
}

double hw_defect(const MeanFieldState& u) noexcept {
  return u.u_ab * u.u_ab - 4.0 * u.u_aa * u.u_bb;
}

void validate_simplex(const MeanFieldState& u) {
  for (double v : {u.u_aa, u.u_ab, u.u_bb}) {
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError("densities must lie in [0, 1]");
  }
  if (std::abs(u.sum() - 1.0) > 1e-9) throw UsageError("densities must sum to 1");
}

ObservableSeries Trajectory::to_series() const {
  ObservableSeries s;
  s.columns = {"time", "u_aa", "u_ab", "u_bb", "hw_defect"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& u = states[i];
    s.rows.push_back({times[i], u.u_aa, u.u_ab, u.u_bb, hw_defect(u)});
  }
  return s;
}

namespace {

MeanFieldState axpy(const MeanFieldState& u, double h, const Vec3& k) {
  return {u.u_aa + h * k[0], u.u_ab + h * k[1], u.u_bb + h * k[2]};
}

MeanFieldState rk4_step(const MeanFieldState& u, const RateSet& r, double h) {
  const Vec3 k1 = rhs(u, r);
  const Vec3 k2 = rhs(axpy(u, 0.5 * h, k1), r);
  const Vec3 k3 = rhs(axpy(u, 0.5 * h, k2), r);
  const Vec3 k4 = rhs(axpy(u, h, k3), r);
  Vec3 k;
  for (int i = 0; i < 3; ++i) k[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
  return axpy(u, h, k);
}

}  // namespace

Trajectory integrate(const MeanFieldState& u0, const RateSet& rates, double t_end,
                     const IntegrationOptions& opt) {
  validate_simplex(u0);
  rates.validate();
  if (!(t_end >= 0.0)) throw UsageError("t_end must be non-negative");
  if (!(opt.step > 0.0)) throw UsageError("step must be positive");
  if (!(opt.sample_interval > 0.0)) throw UsageError("sample interval must be positive");

  Trajectory traj;
  MeanFieldState u = u0;
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(u);

  const double slack = 1e-9 * std::max(1.0, t_end);
  for (std::uint64_t k = 1;; ++k) {
    double ts = static_cast<double>(k) * opt.sample_interval;
    if (ts > t_end + slack) {
      if (t >= t_end) break;
      ts = t_end;
    }
    ts = std::min(ts, t_end);
    while (t < ts) {
      const std::uint64_t steps_left =
          static_cast<std::uint64_t>(std::ceil((ts - t) / opt.step - 1e-9));
      const double h = steps_left <= 1 ? ts - t : opt.step;
      u = rk4_step(u, rates, h);
      t = steps_left <= 1 ? ts : t + h;
      if (!std::isfinite(u.u_aa) || !std::isfinite(u.u_ab) || !std::isfinite(u.u_bb)) {
        throw NumericalFailure("non-finite density during integration", t);
      }
      const double s = u.sum();
      traj.max_simplex_defect = std::max(traj.max_simplex_defect, std::abs(s - 1.0));
      u = {u.u_aa / s, u.u_ab / s, u.u_bb / s};
    }
    traj.times.push_back(ts);
    traj.states.push_back(u);
    if (ts >= t_end) break;
  }
  return traj;
}

double psi(const RateSet& r) noexcept { return (r.phi_aa - r.phi_ba) * (r.phi_bb - r.phi_ab); }

double phi(const RateSet& r) noexcept { return (r.phi_aa - r.phi_ba) + (r.phi_bb - r.phi_ab); }

double phi1(const RateSet& r) noexcept { return psi(r) * phi(r); }

double phi2(const RateSet& r) noexcept {
  const double p = r.phi_aa - r.phi_ba;
  const double q = r.phi_bb - r.phi_ab;
  return -2.0 * (p * q * (r.phi_aa + r.phi_bb) + q * q * r.phi_ba + p * p * r.phi_ab);
}

std::optional<MeanFieldState> interior_fixed_point(const RateSet& r) {
  if (!(psi(r) > 0.0)) return std::nullopt;
  const double p = r.phi_aa - r.phi_ba;
  const double q = r.phi_bb - r.phi_ab;
  const double f = p + q;
  assert(f != 0.0);
  const double f2 = f * f;
  return MeanFieldState{q * q / f2, 2.0 * p * q / f2, p * p / f2};
}

std::string to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::corner_aa:
      return "corner_aa";
    case FixedPointKind::corner_bb:
      return "corner_bb";
    case FixedPointKind::interior:
      return "interior";
  }
  return "?";
}

std::string to_string(Stability s) { return s == Stability::stable ? "stable" : "unstable"; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::gene_a:
      return "gene_a";
    case Regime::gene_b:
      return "gene_b";
    case Regime::coexistence:
      return "coexistence";
    case Regime::founder_control:
      return "founder_control";
    case Regime::degenerate:
      return "degenerate";
  }
  return "?";
}

const FixedPoint* FixedPointReport::find(FixedPointKind kind) const noexcept {
  for (const auto& p : points) {
    if (p.kind == kind) return &p;
  }
  return nullptr;
}

Regime classify(const RateSet& r) {
  r.validate();
  if (r.phi_aa == r.phi_ba || r.phi_bb == r.phi_ab) return Regime::degenerate;
  const bool aa_wins = r.phi_aa > r.phi_ba;
  const bool bb_wins = r.phi_bb > r.phi_ab;
  if (aa_wins && !bb_wins) return Regime::gene_a;
  if (!aa_wins && bb_wins) return Regime::gene_b;
  if (!aa_wins && !bb_wins) return Regime::coexistence;
  return Regime::founder_control;
}

FixedPointReport stability_report(const RateSet& r) {
  FixedPointReport rep;
  rep.regime = classify(r);

  const MeanFieldState aa{1.0, 0.0, 0.0};
  rep.points.push_back({FixedPointKind::corner_aa, aa, tangent_eigenvalues(aa, r),
                        r.phi_aa > r.phi_ba ? Stability::stable : Stability::unstable});
  const MeanFieldState bb{0.0, 0.0, 1.0};
  rep.points.push_back({FixedPointKind::corner_bb, bb, tangent_eigenvalues(bb, r),
                        r.phi_bb > r.phi_ab ? Stability::stable : Stability::unstable});
  if (auto in = interior_fixed_point(r)) {
    const bool stable = r.phi_aa < r.phi_ba && r.phi_bb < r.phi_ab;
    rep.points.push_back({FixedPointKind::interior, *in, tangent_eigenvalues(*in, r),
                          stable ? Stability::stable : Stability::unstable});
    rep.phi1 = phi1(r);
    rep.phi2 = phi2(r);
  }
  return rep;
}

RegimeGrid phase_sweep(const std::vector<double>& aa_values, const std::vector<double>& bb_values,
                       double phi_ab, double phi_ba) {
  if (aa_values.empty() || bb_values.empty()) throw UsageError("phase sweep grid is empty");
  RegimeGrid g{aa_values, bb_values, phi_ab, phi_ba, {}};
  g.cells.reserve(aa_values.size() * bb_values.size());
  for (double aa : aa_values) {
    for (double bb : bb_values) g.cells.push_back(classify(make_rates(aa, phi_ab, phi_ba, bb)));
  }
  return g;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  v.back() = hi;
  return v;
}

}  // namespace diploid
