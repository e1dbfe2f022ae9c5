#pragma once

#include "hypagg/potentials.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace hypagg {

/// Radially symmetric steady state rho(theta) = a0 + a1 cosh(theta) on [0, R], zero outside.
struct EquilibriumSolution {
  std::size_t dim = 2;
  double radius = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;

  double density(double theta) const;
  /// n alpha(n) int_0^R rho(theta) sinh^{n-1}(theta) d theta, in closed form.
  double mass() const;
};

/// Radius of the unit-volume geodesic ball: n alpha(n) int_0^R sinh^{n-1} = 1.
double radius_constant(std::size_t n);
/// Uniform density 1 on the unit-volume ball; steady state for constant-Laplacian attraction.
EquilibriumSolution equilibrium_constant(std::size_t n);

/// Radius solving n alpha(n) int_0^R sinh^{n-1} cosh^2 = 1.
double radius_cosh(std::size_t n);
/// rho = cosh(theta) / (alpha(n) sinh^n R) on [0, R]; steady state for cosh attraction.
EquilibriumSolution equilibrium_cosh(std::size_t n);

/// f(x) = 1 - 2 pi (b0 + b1) x - 2 pi b1 x^2 - (2 pi/3) b1 x^3 + (pi^2/3) b0 b1 x^4,
/// whose roots give x = cosh R - 1 for the mixed attraction b0 A_c + b1 A_h on H^2.
double mixed_quartic(double b0, double b1, double x);

/// Real roots of mixed_quartic in (0, 50], ascending (grid sign changes refined by bisection).
std::vector<double> mixed_quartic_roots(double b0, double b1);

/// Builds the normalized density for a given quartic root without admissibility checks.
EquilibriumSolution mixed_candidate(double b0, double b1, double root);

/// Smallest root whose density is nonnegative on [0, R] and has unit mass.
/// Throws std::domain_error when no root is admissible.
EquilibriumSolution mixed_equilibrium(double b0, double b1);

/// Fixed-order quadrature used by the equilibrium residual and the Lambda profile.
struct QuadratureSpec {
  std::size_t beta_panels = 128;   // Simpson panels on [0, pi]
  std::size_t theta_panels = 512;  // Simpson panels on [0, R]
  std::size_t test_radii = 33;     // uniform evaluation radii on [0, R]
};

/// max over test radii of |rho(theta_x) - int Laplacian(A)(d(x, y)) rho(y) dy|.
double integral_residual(const EquilibriumSolution& sol, const PotentialSpec& spec,
                         const QuadratureSpec& quad = {});

/// Samples (theta, rho) on `samples` uniform points of [0, theta_max] as CSV with a header.
/// theta_max <= 0 selects 1.25 R.
void write_equilibrium_csv(std::ostream& out, const EquilibriumSolution& sol,
                           std::size_t samples = 201, double theta_max = 0.0);

}  // namespace hypagg
