#include "hypagg/particle_sim.hpp"

#include "hypagg/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace hypagg {

namespace {

constexpr double kEscapeRadius = 50.0;

// Row-major copy of the ambient coordinates; the pair loop runs on this without allocating.
struct Packed {
  std::size_t stride;
  std::vector<double> x;

  explicit Packed(const ParticleEnsemble& ens) : stride(ens.dim() + 1), x(ens.size() * stride) {
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const auto& c = ens.points[i].coords();
      std::copy(c.data(), c.data() + stride, x.begin() + static_cast<std::ptrdiff_t>(i * stride));
    }
  }
  const double* row(std::size_t i) const { return x.data() + i * stride; }
};

// <x, y> - 1 with the difference form for nearby points.
double inner_minus_one(const double* a, const double* b, std::size_t stride) {
  double dot = 0.0;
  for (std::size_t k = 1; k < stride; ++k) dot += a[k] * b[k];
  const double s = a[0] * b[0] - dot - 1.0;
  if (s >= 1.0) return s;
  double ds2 = 0.0, cross = 0.0;
  for (std::size_t k = 1; k < stride; ++k) {
    const double d = a[k] - b[k];
    ds2 += d * d;
    cross += d * (a[k] + b[k]);
  }
  const double d0 = cross / (a[0] + b[0]);
  return 0.5 * (ds2 - d0 * d0);
}

}  // namespace

void ParticleSimConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("particle dimension must be >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("regularization delta must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
  if (count < 1) throw std::invalid_argument("need at least one particle");
  if (!(init_radius > 0.0)) throw std::invalid_argument("initial radius must be positive");
  if (!(snapshot_interval > 0.0)) throw std::invalid_argument("snapshot interval must be positive");
}

ParticleEnsemble random_ensemble(const ParticleSimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double p = static_cast<double>(cfg.dim - 1);
  const double peak = std::pow(std::sinh(cfg.init_radius), p);
  std::vector<HPoint> pts;
  pts.reserve(cfg.count);
  while (pts.size() < cfg.count) {
    // radius density proportional to sinh^{n-1} r on [0, init_radius]
    const double r = cfg.init_radius * unit(rng);
    if (unit(rng) * peak > std::pow(std::sinh(r), p)) continue;
    Vector xi(static_cast<Eigen::Index>(cfg.dim));
    for (auto& v : xi) v = normal(rng);
    const double norm = xi.norm();
    if (norm == 0.0) continue;
    pts.push_back(from_polar({r, xi / norm}));
  }
  return ParticleEnsemble::uniform(std::move(pts));
}

std::vector<TangentVector> pairwise_velocity(const ParticleEnsemble& ens, const PotentialSpec& spec,
                                             double delta) {
  ens.validate();
  spec.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("regularization delta must be positive");
  if (ens.dim() != spec.dim) throw std::invalid_argument("ensemble and potential dimensions differ");
  const std::size_t m = ens.size();
  const Packed pk(ens);
  const std::size_t stride = pk.stride;
  std::vector<double> acc(m * stride, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* xi = pk.row(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double* xj = pk.row(j);
      const double s = inner_minus_one(xi, xj, stride);
      if (s <= 0.0) continue;
      const double d = arccosh1p(s);
      const double c = 1.0 + s;
      // log_{x_i} x_j / d = (x_j - c x_i) / sinh d
      const double f = potential_force(spec, std::max(d, delta)) / std::sinh(d);
      double* vi = acc.data() + i * stride;
      double* vj = acc.data() + j * stride;
      const double wi = ens.masses[j] * f;
      const double wj = ens.masses[i] * f;
      for (std::size_t k = 0; k < stride; ++k) {
        vi[k] += wi * (xj[k] - c * xi[k]);
        vj[k] += wj * (xi[k] - c * xj[k]);
      }
    }
  }
  std::vector<TangentVector> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Map<const Vector> v(acc.data() + i * stride, static_cast<Eigen::Index>(stride));
    out.push_back(project_tangent(ens.points[i], v));
  }
  return out;
}

ParticleEnsemble step(const ParticleEnsemble& ens, const PotentialSpec& spec,
                      const ParticleSimConfig& cfg) {
  const auto v = pairwise_velocity(ens, spec, cfg.delta);
  ParticleEnsemble out;
  out.masses = ens.masses;
  out.points.reserve(ens.size());
  const double limit = std::cosh(kEscapeRadius);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    // a step longer than twice the escape radius cannot end inside the ball
    const double len = cfg.dt * tangent_norm(v[i]);
    if (!(len < 2.0 * kEscapeRadius)) {
      throw std::runtime_error("particle " + std::to_string(i) + " left B_50(v)");
    }
    HPoint next = exp_map(ens.points[i], cfg.dt * v[i]);
    if (!(next[0] < limit)) {
      throw std::runtime_error("particle " + std::to_string(i) + " left B_50(v)");
    }
    out.points.push_back(std::move(next));
  }
  return out;
}

ParticleTrajectory run(const ParticleSimConfig& cfg, const PotentialSpec& spec,
                       ParticleEnsemble initial) {
  cfg.validate();
  spec.validate();
  initial.validate();
  if (initial.dim() != cfg.dim || spec.dim != cfg.dim) {
    throw std::invalid_argument("config, potential and ensemble dimensions differ");
  }
  const auto total = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));
  const auto every =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.snapshot_interval / cfg.dt)));
  ParticleTrajectory traj;
  auto record = [&](double t, const ParticleEnsemble& e) {
    ParticleSnapshot snap{t, e, 0.0};
    if (cfg.record_energy) snap.energy = discrete_energy(e, spec);
    traj.snapshots.push_back(std::move(snap));
  };
  record(0.0, initial);
  ParticleEnsemble cur = std::move(initial);
  for (std::size_t k = 1; k <= total; ++k) {
    cur = step(cur, spec, cfg);
    if (k % every == 0 || k == total) record(cfg.dt * static_cast<double>(k), cur);
  }
  traj.steps = total;
  return traj;
}

double support_diameter(const ParticleEnsemble& ens) {
  double best = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = i + 1; j < ens.size(); ++j) {
      best = std::max(best, geodesic_distance(ens.points[i], ens.points[j]));
    }
  }
  return best;
}

void write_snapshots_csv(std::ostream& out, const ParticleTrajectory& traj) {
  if (traj.snapshots.empty()) throw std::invalid_argument("empty particle trajectory");
  const std::size_t dim = traj.snapshots.front().ensemble.dim();
  std::vector<std::string> header{"t", "particle_id"};
  for (std::size_t k = 0; k <= dim; ++k) header.push_back("x" + std::to_string(k));
  header.emplace_back("mass");
  csv::write_header(out, header);
  std::vector<double> row;
  for (const auto& snap : traj.snapshots) {
    for (std::size_t i = 0; i < snap.ensemble.size(); ++i) {
      row.clear();
      row.push_back(snap.time);
      row.push_back(static_cast<double>(i));
      const auto& c = snap.ensemble.points[i].coords();
      row.insert(row.end(), c.data(), c.data() + c.size());
      row.push_back(snap.ensemble.masses[i]);
      csv::write_row(out, row);
    }
  }
}

}  // namespace hypagg
