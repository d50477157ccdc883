#include "diploid/verify/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diploid::oracle {

Vec3 rhs_termwise(const MeanFieldState& u, const RateSet& r) {
  const double x = u.u_aa, y = u.u_ab, z = u.u_bb;
  const double a_births = 2.0 * r.phi_aa * x + r.phi_ab * y;
  const double b_births = 2.0 * r.phi_bb * z + r.phi_ba * y;
  const double daa = a_births * y / 2.0 - b_births * x;
  const double dab = a_births * (z - y / 2.0) + b_births * (x - y / 2.0);
  const double dbb = b_births * y / 2.0 - a_births * z;
  return {daa, dab, dbb};
}

Mat3 jacobian_numeric(const MeanFieldState& u, const RateSet& r, double h) {
  Mat3 J{};
  for (int k = 0; k < 3; ++k) {
    MeanFieldState up = u, dn = u;
    double* pu = k == 0 ? &up.u_aa : (k == 1 ? &up.u_ab : &up.u_bb);
    double* pd = k == 0 ? &dn.u_aa : (k == 1 ? &dn.u_ab : &dn.u_bb);
    *pu += h;
    *pd -= h;
    const Vec3 fu = rhs_termwise(up, r), fd = rhs_termwise(dn, r);
    for (int i = 0; i < 3; ++i) J[i][k] = (fu[i] - fd[i]) / (2.0 * h);
  }
  return J;
}

std::array<std::complex<double>, 2> nonzero_eigenvalues(const Mat3& J) {
  const double tr = J[0][0] + J[1][1] + J[2][2];
  const double m2 = J[0][0] * J[1][1] - J[0][1] * J[1][0] + J[0][0] * J[2][2] -
                    J[0][2] * J[2][0] + J[1][1] * J[2][2] - J[1][2] * J[2][1];
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * m2, 0.0));
  std::complex<double> a = (tr + disc) / 2.0, b = (tr - disc) / 2.0;
  if (a.real() < b.real()) std::swap(a, b);
  return {a, b};
}

MeanFieldState interior_point(const RateSet& r) {
  const double p = r.phi_aa - r.phi_ba;
  const double q = r.phi_bb - r.phi_ab;
  if (!(p * q > 0.0)) return {0.0, 0.0, 0.0};
  const double s = (p + q) * (p + q);
  return {q * q / s, 2.0 * p * q / s, p * p / s};
}

Regime regime_by_signs(const RateSet& r) {
  const double p = r.phi_aa - r.phi_ba;
  const double q = r.phi_bb - r.phi_ab;
  if (p == 0.0 || q == 0.0) return Regime::degenerate;
  if (p > 0.0 && q > 0.0) return Regime::founder_control;
  if (p < 0.0 && q < 0.0) return Regime::coexistence;
  return p > 0.0 ? Regime::gene_a : Regime::gene_b;
}

Regime swap_regime(Regime g) {
  if (g == Regime::gene_a) return Regime::gene_b;
  if (g == Regime::gene_b) return Regime::gene_a;
  return g;
}

double hitting_probability_linear(double r, int K) {
  if (!(r > 0.0 && r < 1.0) || K < 0) throw std::invalid_argument("bad walk");
  if (K == 0) return 1.0;
  // Unknowns h(y) for doubled positions y = -1, 0, ..., 2K - 1; h(-2) = 0, h(2K) = 1.
  const int n = 2 * K + 1;
  std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
  auto col = [](int y) { return y + 1; };
  for (int y = -1; y < 2 * K; ++y) {
    auto& row = A[col(y)];
    row[col(y)] = 1.0;
    const int up = 2 * (static_cast<int>(std::floor(y / 2.0)) + 1);
    const int down = y - 1;
    if (up >= 2 * K) {
      row[n] += r;
    } else {
      row[col(up)] -= r;
    }
    if (down > -2) row[col(down)] -= 1.0 - r;
  }
  for (int i = 0; i < n; ++i) {
    int piv = i;
    for (int k = i + 1; k < n; ++k) {
      if (std::fabs(A[k][i]) > std::fabs(A[piv][i])) piv = k;
    }
    std::swap(A[i], A[piv]);
    for (int k = 0; k < n; ++k) {
      if (k == i || A[k][i] == 0.0) continue;
      const double f = A[k][i] / A[i][i];
      for (int j = i; j <= n; ++j) A[k][j] -= f * A[i][j];
    }
  }
  return A[col(0)][n] / A[col(0)][col(0)];
}

std::array<double, 3> genotype_rates(Genotype current, int n_aa, int n_ab, int n_bb,
                                     const RateSet& r) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  switch (current) {
    case Genotype::AA:
      out[1] = 2.0 * r.phi_bb * n_bb + r.phi_ba * n_ab;
      break;
    case Genotype::AB:
      out[2] = r.phi_bb * n_bb + r.phi_ba / 2.0 * n_ab;
      out[0] = r.phi_aa * n_aa + r.phi_ab / 2.0 * n_ab;
      break;
    case Genotype::BB:
      out[1] = 2.0 * r.phi_aa * n_aa + r.phi_ab * n_ab;
      break;
  }
  return out;
}

}  // namespace diploid::oracle
