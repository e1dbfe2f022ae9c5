#pragma once

#include "hypagg/equilibria.hpp"
#include "hypagg/potentials.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypagg::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst error (or the quantity being bounded)
  double tolerance = 0.0;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results);
/// One `PASS|FAIL name measured=... tol=...` line per result.
void print(std::ostream& out, const std::vector<CheckResult>& results);

struct GeometryOptions {
  std::size_t samples = 10000;
  std::vector<std::size_t> dims{2, 3, 5};
  std::uint64_t seed = 20240611;
  double max_radius = 3.0;  // random points are drawn in B_r(v)
  double max_boost = 0.9;   // random boosts have |w| < max_boost
};

/// Randomized identities of the hyperboloid algebra, one result per identity and dimension.
std::vector<CheckResult> geometry_suite(const GeometryOptions& opt = {});

/// Closed-form radii and the mixed (2, -1) equilibrium constants.
std::vector<CheckResult> closed_form_constants();

/// Integral-equation residuals of rho_c, rho_h (n = 2) and the mixed (2, -1) equilibrium.
std::vector<CheckResult> equilibrium_residuals(const QuadratureSpec& quad = {});

/// Euler-Lagrange conditions and lambda = 2E for a closed-form equilibrium.
std::vector<CheckResult> euler_lagrange(const PotentialSpec& spec, const QuadratureSpec& quad = {});

struct ConvexityOptions {
  std::size_t pairs = 100;
  std::size_t ensembles = 100;  // random particle ensembles for the centering check
  std::uint64_t seed = 7;
};

/// Convexity identity on random radial pairs and K invariance under center().
std::vector<CheckResult> convexity_suite(const ConvexityOptions& opt = {});

}  // namespace hypagg::verify
