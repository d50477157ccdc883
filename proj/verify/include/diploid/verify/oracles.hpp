#pragma once

// Reference implementations written independently of the library code they
// check. Slow and direct on purpose; used only by tests and the acceptance suite.

#include <array>
#include <complex>

#include "diploid/mean_field.hpp"
#include "diploid/types.hpp"

namespace diploid::oracle {

/// Mean-field right-hand side written term by term.
Vec3 rhs_termwise(const MeanFieldState& u, const RateSet& r);

/// Central-difference Jacobian of rhs_termwise.
Mat3 jacobian_numeric(const MeanFieldState& u, const RateSet& r, double h = 1e-6);

/// The two eigenvalues of a 3x3 Jacobian whose columns sum to zero (the
/// third one is 0), from its trace and principal 2x2 minors.
std::array<std::complex<double>, 2> nonzero_eigenvalues(const Mat3& J);

/// Interior equilibrium from the closed form; all zeros when psi <= 0.
MeanFieldState interior_point(const RateSet& r);

/// Regime from the stability sign conditions of the three equilibria.
Regime regime_by_signs(const RateSet& r);

/// Exchange gene_a and gene_b.
Regime swap_regime(Regime g);

/// P(hit K before -1 from 0) for the half-integer walk (up to floor(Y) + 1 with
/// probability r, down by 1/2 otherwise), by solving the linear first-step
/// equations with Gaussian elimination.
double hitting_probability_linear(double r, int K);

/// Rates of the genotype process at a site with neighbor counts (#aa, #ab, #bb),
/// listed as (to AA, to AB, to BB).
std::array<double, 3> genotype_rates(Genotype current, int n_aa, int n_ab, int n_bb,
                                     const RateSet& r);

}  // namespace diploid::oracle
