#include <doctest.h>

#include <cmath>

#include "diploid/errors.hpp"
#include "diploid/mean_field.hpp"
#include "diploid/rng.hpp"
#include "diploid/verify/oracles.hpp"

using namespace diploid;

namespace {

MeanFieldState random_simplex(CounterRng& rng) {
  const double a = -std::log(rng.uniform_open()), b = -std::log(rng.uniform_open()),
               c = -std::log(rng.uniform_open());
  return {a / (a + b + c), b / (a + b + c), c / (a + b + c)};
}

RateSet random_rates(CounterRng& rng) {
  return make_rates(5 * rng.uniform_open(), 5 * rng.uniform_open(), 5 * rng.uniform_open(),
                    5 * rng.uniform_open());
}

Vec3 mat_vec(const Mat3& J, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = J[i][0] * v[0] + J[i][1] * v[1] + J[i][2] * v[2];
  return out;
}

}  // namespace

TEST_CASE("rhs examples") {
  const RateSet r = make_rates(1, 4, 3, 2);
  for (double x : rhs({1, 0, 0}, r)) CHECK(x == 0.0);
  for (double x : rhs({0.25, 0.5, 0.25}, r)) CHECK(std::fabs(x) <= 1e-14);
  const Vec3 a = rhs({0.5, 0.3, 0.2}, r), b = oracle::rhs_termwise({0.5, 0.3, 0.2}, r);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-14);
}

TEST_CASE("conservation and agreement with the termwise oracle") {
  CounterRng rng(1);
  for (int k = 0; k < 10000; ++k) {
    const RateSet r = random_rates(rng);
    const MeanFieldState u = random_simplex(rng);
    const Vec3 f = rhs(u, r), g = oracle::rhs_termwise(u, r);
    const double scale = std::fabs(f[0]) + std::fabs(f[1]) + std::fabs(f[2]) + 1e-300;
    CHECK(std::fabs(f[0] + f[1] + f[2]) <= 1e-15 * std::max(1.0, scale));
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(f[i] - g[i]) <= 1e-13);
  }
}

TEST_CASE("analytic Jacobian against central differences") {
  CounterRng rng(2);
  for (int k = 0; k < 200; ++k) {
    const RateSet r = random_rates(rng);
    const MeanFieldState u = random_simplex(rng);
    const Mat3 J = jacobian(u, r), N = oracle::jacobian_numeric(u, r);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(J[i][j] == doctest::Approx(N[i][j]).epsilon(1e-6));
    }
  }
}

TEST_CASE("fixed-point residual and eigen identities") {
  CounterRng rng(3);
  int interior = 0;
  for (int k = 0; k < 10000; ++k) {
    const RateSet r = random_rates(rng);
    const auto p = interior_fixed_point(r);
    CHECK(p.has_value() == (psi(r) > 0.0));
    // corner aa: J (1,-1,0) = (phi_ba - phi_aa) (1,-1,0)
    const Vec3 ca = mat_vec(jacobian({1, 0, 0}, r), {1, -1, 0});
    CHECK(std::fabs(ca[0] - (r.phi_ba - r.phi_aa)) <= 1e-12);
    CHECK(std::fabs(ca[1] + (r.phi_ba - r.phi_aa)) <= 1e-12);
    CHECK(std::fabs(ca[2]) <= 1e-12);
    if (!p) continue;
    ++interior;
    const Vec3 f = rhs(*p, r);
    CHECK(std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]) <= 1e-12);
    const double P = r.phi_aa - r.phi_ba, Q = r.phi_bb - r.phi_ab;
    const Vec3 v{Q, P - Q, -P};
    const Vec3 Jv = mat_vec(jacobian(*p, r), v);
    // the tangent eigenvalue is phi1 / phi^2
    const double lam = phi1(r) / (phi(r) * phi(r));
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(Jv[i] - lam * v[i]) <= 1e-10 * std::max(1.0, std::fabs(lam)));
  }
  CHECK(interior > 1000);
}

TEST_CASE("interior point examples") {
  const auto a = interior_fixed_point(make_rates(1, 4, 3, 2));
  REQUIRE(a);
  CHECK(a->u_aa == doctest::Approx(0.25));
  CHECK(a->u_ab == doctest::Approx(0.5));
  CHECK(a->u_bb == doctest::Approx(0.25));
  CHECK_FALSE(interior_fixed_point(make_rates(3, 4, 3, 2)));
  const auto b = interior_fixed_point(make_rates(4, 5, 5, 4));
  REQUIRE(b);
  CHECK(b->u_ab == doctest::Approx(0.5));
}

TEST_CASE("stability reports") {
  const auto co = stability_report(make_rates(1, 4, 3, 2));
  CHECK(co.regime == Regime::coexistence);
  REQUIRE(co.phi1);
  CHECK(*co.phi1 == doctest::Approx(-16.0));
  CHECK(co.find(FixedPointKind::interior)->stability == Stability::stable);

  const auto fc = stability_report(make_rates(4, 1, 2, 3));
  CHECK(fc.regime == Regime::founder_control);
  CHECK(*fc.phi1 == doctest::Approx(16.0));
  CHECK(fc.find(FixedPointKind::interior)->stability == Stability::unstable);

  const auto ga = stability_report(make_rates(3, 3, 1, 1));
  CHECK(ga.regime == Regime::gene_a);
  CHECK_FALSE(ga.find(FixedPointKind::interior));
  CHECK(ga.find(FixedPointKind::corner_aa)->stability == Stability::stable);
  CHECK(ga.find(FixedPointKind::corner_bb)->stability == Stability::unstable);

  CHECK(classify(make_rates(3, 1, 3, 2)) == Regime::degenerate);
}

TEST_CASE("regimes are scale invariant and match the sign table") {
  CounterRng rng(4);
  for (int k = 0; k < 2000; ++k) {
    const RateSet r = random_rates(rng);
    const double lambda = 0.1 + 10 * rng.uniform();
    CHECK(classify(r) == classify(r.scaled(lambda)));
    CHECK(classify(r) == oracle::regime_by_signs(r));
  }
}

TEST_CASE("hw_defect") {
  const double p = 0.3;
  CHECK(std::fabs(hw_defect({p * p, 2 * p * (1 - p), (1 - p) * (1 - p)})) < 1e-15);
  CHECK(hw_defect({1, 0, 0}) == 0.0);
  CHECK(hw_defect({0.5, 0.3, 0.2}) == doctest::Approx(-0.31));
}

TEST_CASE("integration") {
  const Trajectory c = integrate({0, 0, 1}, make_rates(1, 4, 3, 2), 10.0);
  for (const auto& s : c.states) CHECK(s == MeanFieldState{0, 0, 1});

  const Trajectory t = integrate({0.6, 0.2, 0.2}, make_rates(1, 4, 3, 2), 200.0);
  const auto& e = t.states.back();
  CHECK(std::fabs(e.u_aa - 0.25) <= 1e-6);
  CHECK(std::fabs(e.u_ab - 0.5) <= 1e-6);
  CHECK(t.times.back() == 200.0);

  const Trajectory f = integrate({0.98, 0.01, 0.01}, make_rates(4, 1, 2, 3), 200.0);
  CHECK(f.states.back().u_aa == doctest::Approx(1.0));

  CHECK_THROWS_AS(integrate({0.5, 0.6, 0.1}, make_rates(1, 1, 1, 1), 1.0), UsageError);
  CHECK_THROWS_AS(integrate({0.5, 0.25, 0.25}, make_rates(1e300, 1e300, 1e300, 1e300), 1.0,
                            {0.5, 1.0}),
                  NumericalFailure);
}

TEST_CASE("Hardy-Weinberg curve is invariant") {
  CounterRng rng(5);
  for (int k = 0; k < 5; ++k) {
    const RateSet r = random_rates(rng);
    const double p = rng.uniform_open();
    const Trajectory t = integrate({p * p, 2 * p * (1 - p), (1 - p) * (1 - p)}, r, 100.0);
    for (const auto& s : t.states) CHECK(std::fabs(hw_defect(s)) <= 1e-6);
  }
}

TEST_CASE("phase sweep cells") {
  const RegimeGrid g = phase_sweep({0.5, 2.0}, {0.5, 2.0}, 1.0, 1.0);
  CHECK(g.at(0, 0) == Regime::coexistence);
  CHECK(g.at(1, 0) == Regime::gene_a);
  CHECK(g.at(0, 1) == Regime::gene_b);
  CHECK(g.at(1, 1) == Regime::founder_control);
  CHECK(phase_sweep({2.0}, {2.0}, 1, 1).cells.size() == 1);
  CHECK(linspace(0, 1, 3) == std::vector<double>{0, 0.5, 1});
}
