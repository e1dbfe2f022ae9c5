#pragma once

#include "hypagg/equilibria.hpp"
#include "hypagg/hyperboloid.hpp"
#include "hypagg/potentials.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypagg {

/// Radially symmetric density sampled on nodes 0 = theta_0 < ... < theta_m, piecewise linear
/// between nodes and zero beyond the last node.
class RadialDensity {
 public:
  /// Requires unit mass (trapezoid rule on the nodes) within `mass_tol`.
  RadialDensity(std::size_t dim, std::vector<double> nodes, std::vector<double> values,
                double mass_tol = 1e-6);

  /// Rescales the values to unit mass before validating.
  static RadialDensity normalized(std::size_t dim, std::vector<double> nodes,
                                  std::vector<double> values);
  /// Samples a closed-form equilibrium on `nodes` uniform points of [0, R].
  static RadialDensity from_equilibrium(const EquilibriumSolution& sol, std::size_t nodes = 2001);

  double operator()(double theta) const;
  std::size_t dim() const { return dim_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  double support_radius() const { return nodes_.back(); }

 private:
  std::size_t dim_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// n alpha(n) * trapezoid(rho sinh^{n-1}) on the density nodes.
double radial_mass(std::size_t dim, const std::vector<double>& nodes,
                   const std::vector<double>& values);

/// Discrete probability measure on H^n.
struct ParticleEnsemble {
  std::vector<HPoint> points;
  std::vector<double> masses;

  /// Equal masses 1/M.
  static ParticleEnsemble uniform(std::vector<HPoint> points);
  std::size_t size() const { return points.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().dim(); }
  /// Throws unless masses are positive, sum to 1 within 1e-12, and dimensions agree.
  void validate() const;
};

/// Lambda(r) = (K * rho)(x) for d(v, x) = r, sampled on a radius grid.
struct LambdaProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double support_radius = 0.0;
};

/// Evaluates Lambda at the given radii. The Newtonian part is integrated from the flux
/// identity |dB_r| Lambda_G'(r) = -M(r); the attraction part uses law-of-cosines quadrature.
std::vector<double> lambda_at(const RadialDensity& rho, const PotentialSpec& spec,
                              const QuadratureSpec& quad, const std::vector<double>& radii);

/// Profile on `points` uniform radii of [0, r_max]; r_max <= 0 selects twice the support radius.
LambdaProfile lambda_radial(const RadialDensity& rho, const PotentialSpec& spec,
                            const QuadratureSpec& quad = {}, double r_max = 0.0,
                            std::size_t points = 201);

/// E = 1/2 n alpha(n) int Lambda(r) rho(r) sinh^{n-1} r dr.
double energy_total(const RadialDensity& rho, const PotentialSpec& spec,
                    const QuadratureSpec& quad = {});

struct EulerLagrangeReport {
  double lambda = 0.0;          // support average of Lambda
  double variation = 0.0;       // max |Lambda - lambda| / |lambda| on the support
  double outside_gap = 0.0;     // min (Lambda - lambda) beyond the support
  double outside_min_step = 0.0;  // min Lambda(r_{i+1}) - Lambda(r_i) beyond the support
  double energy = 0.0;
  double lambda_vs_2e = 0.0;    // |lambda - 2E| / |lambda|

  /// Flat "key = value" lines.
  std::string to_key_value() const;
};

EulerLagrangeReport euler_lagrange_check(const RadialDensity& rho, const PotentialSpec& spec,
                                         const QuadratureSpec& quad = {});

/// c_rho = int x rho(x) dx in R^{n+1}; (c0, 0, ..., 0) for radial densities.
Vector moment_vector(const RadialDensity& rho);
Vector moment_vector(const ParticleEnsemble& ens);

/// K[rho] = <c_rho, c_rho>, the cosh-attraction functional.
double kappa(const RadialDensity& rho);
double kappa(const ParticleEnsemble& ens);

/// t K[rho1] + (1-t) K[rho2] - K[t rho1 + (1-t) rho2]. Radial inputs must share nodes.
double convexity_gap(const RadialDensity& rho1, const RadialDensity& rho2, double t);
double convexity_gap(const ParticleEnsemble& e1, const ParticleEnsemble& e2, double t);

/// Pushes the ensemble through x -> x -' c_hat so that its spatial moments vanish.
ParticleEnsemble center(const ParticleEnsemble& ens);

/// 1/2 sum_{i != j} m_i m_j K(d(x_i, x_j)); coincident pairs are skipped.
double discrete_energy(const ParticleEnsemble& ens, const PotentialSpec& spec);

}  // namespace hypagg
