#pragma once

#include "hypagg/energy.hpp"
#include "hypagg/hyperboloid.hpp"
#include "hypagg/potentials.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hypagg {

struct ParticleSimConfig {
  std::size_t dim = 2;
  double dt = 0.01;
  double t_final = 40.0;
  double delta = 1e-3;  // distances below delta are clamped inside K'
  std::uint64_t seed = 1;
  std::size_t count = 200;
  double init_radius = 2.0;        // initial particles uniform in B_r(v)
  double snapshot_interval = 1.0;
  bool record_energy = false;

  void validate() const;
};

/// `cfg.count` equal-mass particles, uniform (hyperbolic volume) in the ball B_r(v).
ParticleEnsemble random_ensemble(const ParticleSimConfig& cfg);

/// v_i = sum_{j != i} m_j K'(max(d_ij, delta)) log_{x_i}(x_j) / d_ij. Coincident pairs are skipped.
std::vector<TangentVector> pairwise_velocity(const ParticleEnsemble& ens, const PotentialSpec& spec,
                                             double delta = 1e-3);

/// Geodesic forward Euler: x_i <- exp_{x_i}(dt v_i). Throws if a particle leaves B_50(v).
ParticleEnsemble step(const ParticleEnsemble& ens, const PotentialSpec& spec,
                      const ParticleSimConfig& cfg);

struct ParticleSnapshot {
  double time = 0.0;
  ParticleEnsemble ensemble;
  double energy = 0.0;  // only filled when cfg.record_energy
};

struct ParticleTrajectory {
  std::vector<ParticleSnapshot> snapshots;  // initial, every snapshot_interval, terminal
  std::size_t steps = 0;
};

ParticleTrajectory run(const ParticleSimConfig& cfg, const PotentialSpec& spec,
                       ParticleEnsemble initial);

/// max_{i,j} d(x_i, x_j).
double support_diameter(const ParticleEnsemble& ens);

/// Header `t,particle_id,x0..xn,mass`.
void write_snapshots_csv(std::ostream& out, const ParticleTrajectory& traj);

}  // namespace hypagg
