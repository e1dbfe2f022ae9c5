#pragma once

#include "hypagg/equilibria.hpp"
#include "hypagg/potentials.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace hypagg {

/// Characteristic radii theta_i(t) and the density carried along each of them.
struct RadialState {
  double time = 0.0;
  std::vector<double> radii;
  std::vector<double> densities;

  std::size_t size() const { return radii.size(); }
};

struct SolverConfig {
  std::size_t dim = 2;
  double dt = 0.02;
  std::size_t n_nodes = 51;
  double dx = 0.02;  // initial node spacing; nodes at (i - 1) dx
  double t_final = 20.0;
  std::size_t beta_panels = 64;  // Simpson panels for the angular integral
  double steady_tol = 1e-4;      // stop once max |d theta/dt| drops below; <= 0 disables
  double sample_interval = 1.0;  // time between recorded samples

  void validate() const;
};

/// Unnormalized initial profile e^{-5 theta}(0.01 + theta - theta^2) on [0, 1], zero elsewhere.
double initial_profile(double theta);
/// C with n alpha(n) int_0^1 initial_profile(theta) sinh^{n-1} theta d theta = C.
double initial_normalization(std::size_t dim = 2);
/// initial_profile / C: unit total mass on H^n.
double initial_density(double theta, std::size_t dim = 2);
/// Nodes (i - 1) dx carrying initial_density.
RadialState initial_state(const SolverConfig& cfg);

/// n alpha(n) * trapezoid(rho sinh^{n-1}) over the (sorted) characteristic nodes.
double state_mass(const RadialState& s, std::size_t dim);

struct RadialRates {
  std::vector<double> dtheta;
  std::vector<double> drho;

  double max_speed() const;
};

struct Trajectory {
  std::vector<RadialState> samples;  // includes the initial and the terminal state
  bool reached_steady = false;
  std::size_t steps = 0;
  std::size_t crossings = 0;  // steps after which characteristic order had to be restored
  double final_max_speed = 0.0;
};

/// Integrator for the coupled (theta_i, rho_i) characteristic system. Quadrature tables
/// are built once per instance; all methods are const.
class RadialSolver {
 public:
  RadialSolver(PotentialSpec spec, SolverConfig cfg);

  RadialRates rates(const RadialState& s) const;
  /// Classical RK4 step; densities clamped at zero; throws on divergence.
  RadialState step(const RadialState& s) const;
  Trajectory run(RadialState initial) const;

  const PotentialSpec& spec() const { return spec_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  PotentialSpec spec_;
  SolverConfig cfg_;
  AttractionKernel kernel_;
  std::vector<double> cos_beta_;
  std::vector<double> beta_weight_;  // Simpson weight * sin^{n-2}(beta) * |S^{n-2}|
};

RadialRates rhs(const RadialState& s, const PotentialSpec& spec, const SolverConfig& cfg);
RadialState rk4_step(const RadialState& s, const PotentialSpec& spec, const SolverConfig& cfg);
Trajectory run(const SolverConfig& cfg, const PotentialSpec& spec, const RadialState& initial);

/// max |rho_i - rho_eq(theta_i)| over nodes with theta_i <= fraction * R.
double interior_error(const RadialState& s, const EquilibriumSolution& eq, double fraction = 0.9);

/// Header `t,theta_1..theta_N,rho_1..rho_N`, one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace hypagg
