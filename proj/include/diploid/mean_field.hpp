#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "diploid/lattice_engine.hpp"
#include "diploid/types.hpp"

namespace diploid {

/// Genotype densities on the probability simplex.
struct MeanFieldState {
  double u_aa = 1.0;
  double u_ab = 0.0;
  double u_bb = 0.0;

  double sum() const noexcept { return u_aa + u_ab + u_bb; }
  friend bool operator==(const MeanFieldState&, const MeanFieldState&) = default;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Time derivative (du_aa, du_ab, du_bb) of the mean-field system.
Vec3 rhs(const MeanFieldState& u, const RateSet& rates) noexcept;

/// Analytic Jacobian of `rhs` in the ambient coordinates.
Mat3 jacobian(const MeanFieldState& u, const RateSet& rates) noexcept;

/// Eigenvalues of the Jacobian restricted to the simplex tangent plane
/// {w : w_1 + w_2 + w_3 = 0}, sorted by decreasing real part.
std::array<std::complex<double>, 2> tangent_eigenvalues(const MeanFieldState& u,
                                                        const RateSet& rates);

/// u_ab^2 - 4 u_aa u_bb; zero on the Hardy-Weinberg curve.
double hw_defect(const MeanFieldState& u) noexcept;

/// Throws UsageError unless every density is in [0, 1] and they sum to 1 within 1e-9.
void validate_simplex(const MeanFieldState& u);

struct IntegrationOptions {
  double step = 1e-3;
  double sample_interval = 1.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<MeanFieldState> states;
  /// Largest |sum - 1| seen before any renormalization.
  double max_simplex_defect = 0.0;

  /// Columns time, u_aa, u_ab, u_bb, hw_defect.
  ObservableSeries to_series() const;
};

/// Fixed-step classical RK4, renormalized onto the simplex after every step.
/// Samples at multiples of `sample_interval` and at t_end. Throws
/// NumericalFailure on a non-finite value.
Trajectory integrate(const MeanFieldState& u0, const RateSet& rates, double t_end,
                     const IntegrationOptions& options = {});

/// Closed-form combinations of the rates.
double psi(const RateSet& r) noexcept;
double phi(const RateSet& r) noexcept;
double phi1(const RateSet& r) noexcept;
double phi2(const RateSet& r) noexcept;

/// Interior equilibrium, present iff psi > 0.
std::optional<MeanFieldState> interior_fixed_point(const RateSet& rates);

enum class FixedPointKind : std::uint8_t { corner_aa, corner_bb, interior };
enum class Stability : std::uint8_t { stable, unstable };
enum class Regime : std::uint8_t { gene_a, gene_b, coexistence, founder_control, degenerate };

std::string to_string(FixedPointKind k);
std::string to_string(Stability s);
std::string to_string(Regime r);

struct FixedPoint {
  FixedPointKind kind;
  MeanFieldState state;
  std::array<std::complex<double>, 2> eigenvalues;
  Stability stability;
};

struct FixedPointReport {
  std::vector<FixedPoint> points;
  Regime regime = Regime::degenerate;
  /// Closed-form phi1 and phi2 when the interior point exists. The tangent
  /// eigenvalues at the interior point are phi1 / phi^2 and phi2 / phi^2.
  std::optional<double> phi1;
  std::optional<double> phi2;

  const FixedPoint* find(FixedPointKind kind) const noexcept;
};

/// Regime from the sign table; any equality is `degenerate`.
Regime classify(const RateSet& rates);

FixedPointReport stability_report(const RateSet& rates);

/// Regimes over a (phi_aa, phi_bb) grid; cell (i, j) has phi_aa = aa_values[i]
/// and phi_bb = bb_values[j].
struct RegimeGrid {
  std::vector<double> aa_values;
  std::vector<double> bb_values;
  double phi_ab = 0.0;
  double phi_ba = 0.0;
  std::vector<Regime> cells;

  Regime at(std::size_t i, std::size_t j) const { return cells.at(i * bb_values.size() + j); }
};

RegimeGrid phase_sweep(const std::vector<double>& aa_values, const std::vector<double>& bb_values,
                       double phi_ab, double phi_ba);

/// Evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace diploid
