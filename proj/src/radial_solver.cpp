#include "hypagg/radial_solver.hpp"

#include "hypagg/csv.hpp"
#include "hypagg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypagg {

namespace {

constexpr double kMaxRadius = 50.0;
constexpr double kMaxDensity = 1e6;
constexpr double kCollisionGap = 1e-12;

std::vector<std::size_t> sort_order(const std::vector<double>& radii) {
  std::vector<std::size_t> idx(radii.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
  return idx;
}

void check_state(const RadialState& s) {
  if (s.radii.size() != s.densities.size()) throw std::invalid_argument("state size mismatch");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s.radii[i]) || !std::isfinite(s.densities[i]) ||
        s.radii[i] > kMaxRadius || s.densities[i] > kMaxDensity) {
      throw std::runtime_error("radial solver diverged at t = " + std::to_string(s.time) +
                               " (node " + std::to_string(i) + ")");
    }
  }
}

RadialState axpy(const RadialState& s, double h, const RadialRates& k) {
  RadialState out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.radii[i] += h * k.dtheta[i];
    out.densities[i] += h * k.drho[i];
  }
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("solver dimension must be >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (n_nodes < 3) throw std::invalid_argument("need at least 3 nodes");
  if (!(dx > 0.0)) throw std::invalid_argument("node spacing must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
  if (beta_panels == 0 || beta_panels % 2 != 0) {
    throw std::invalid_argument("beta_panels must be even and positive");
  }
  if (!(sample_interval > 0.0)) throw std::invalid_argument("sample interval must be positive");
}

double initial_profile(double theta) {
  if (theta < 0.0 || theta > 1.0) return 0.0;
  return std::exp(-5.0 * theta) * (0.01 + theta - theta * theta);
}

double initial_normalization(std::size_t dim) {
  const double p = static_cast<double>(dim - 1);
  return sphere_area(dim) *
         quad::integrate([p](double t) { return initial_profile(t) * std::pow(std::sinh(t), p); },
                         0.0, 1.0);
}

double initial_density(double theta, std::size_t dim) {
  return initial_profile(theta) / initial_normalization(dim);
}

RadialState initial_state(const SolverConfig& cfg) {
  cfg.validate();
  const double c = initial_normalization(cfg.dim);
  RadialState s;
  s.radii.resize(cfg.n_nodes);
  s.densities.resize(cfg.n_nodes);
  for (std::size_t i = 0; i < cfg.n_nodes; ++i) {
    s.radii[i] = cfg.dx * static_cast<double>(i);
    s.densities[i] = initial_profile(s.radii[i]) / c;
  }
  return s;
}

double state_mass(const RadialState& s, std::size_t dim) {
  const auto order = sort_order(s.radii);
  std::vector<double> x(s.size()), f(s.size());
  const double p = static_cast<double>(dim - 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    x[i] = s.radii[order[i]];
    f[i] = s.densities[order[i]] * std::pow(std::sinh(x[i]), p);
  }
  return sphere_area(dim) * quad::trapezoid(x, f);
}

double RadialRates::max_speed() const {
  double m = 0.0;
  for (double v : dtheta) m = std::max(m, std::abs(v));
  return m;
}

RadialSolver::RadialSolver(PotentialSpec spec, SolverConfig cfg)
    : spec_(spec), cfg_(cfg), kernel_(spec) {
  cfg_.validate();
  if (spec_.dim != cfg_.dim) throw std::invalid_argument("potential and solver dimensions differ");
  const std::size_t nb = cfg_.beta_panels;
  const double hb = std::numbers::pi / static_cast<double>(nb);
  const auto w = quad::simpson_weights(nb, hb);
  const double prefactor = sphere_area(cfg_.dim - 1);
  for (std::size_t k = 0; k <= nb; ++k) {
    const double b = hb * static_cast<double>(k);
    const double weight = prefactor * w[k] * std::pow(std::sin(b), static_cast<double>(cfg_.dim - 2));
    if (weight == 0.0) continue;
    cos_beta_.push_back(std::cos(b));
    beta_weight_.push_back(weight);
  }
}

RadialRates RadialSolver::rates(const RadialState& s) const {
  if (s.radii.size() != s.densities.size()) throw std::invalid_argument("state size mismatch");
  const std::size_t n_nodes = s.size();
  const auto order = sort_order(s.radii);
  const double p = static_cast<double>(cfg_.dim - 1);

  std::vector<double> th(n_nodes), rho(n_nodes), ch(n_nodes), sh(n_nodes), shp(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    th[i] = s.radii[order[i]];
    rho[i] = s.densities[order[i]];
    ch[i] = std::cosh(th[i]);
    sh[i] = std::sinh(th[i]);
    shp[i] = std::pow(sh[i], p);
  }
  for (std::size_t i = 1; i < n_nodes; ++i) {
    if (th[i] - th[i - 1] < kCollisionGap) {
      throw std::runtime_error("characteristic collision near theta = " + std::to_string(th[i]) +
                               " at t = " + std::to_string(s.time));
    }
  }

  // Trapezoid weights on the current nodes and the mass inside each node.
  std::vector<double> mw(n_nodes), inside(n_nodes, 0.0);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    const double left = j > 0 ? th[j] - th[j - 1] : 0.0;
    const double right = j + 1 < n_nodes ? th[j + 1] - th[j] : 0.0;
    mw[j] = 0.5 * (left + right) * rho[j] * shp[j];
    if (j > 0) inside[j] = inside[j - 1] + 0.5 * left * (rho[j - 1] * shp[j - 1] + rho[j] * shp[j]);
  }

  const bool attract = spec_.attraction != Attraction::None;
  RadialRates sorted{std::vector<double>(n_nodes, 0.0), std::vector<double>(n_nodes, 0.0)};
  for (std::size_t i = 0; i < n_nodes; ++i) {
    double pull = 0.0;
    double lap = 0.0;
    if (attract) {
      for (std::size_t k = 0; k < cos_beta_.size(); ++k) {
        const double cb = cos_beta_[k];
        double pull_k = 0.0, lap_k = 0.0;
        for (std::size_t j = 0; j < n_nodes; ++j) {
          if (mw[j] == 0.0) continue;
          const double c = std::max(1.0, ch[i] * ch[j] - sh[i] * sh[j] * cb);
          // d/d theta_x of A(theta_xy) = A'(theta_xy)/sinh(theta_xy) * d cosh(theta_xy)/d theta_x
          pull_k += mw[j] * kernel_.prime_over_sinh(c) * (sh[i] * ch[j] - ch[i] * sh[j] * cb);
          lap_k += mw[j] * kernel_.laplacian(c);
        }
        pull += beta_weight_[k] * pull_k;
        lap += beta_weight_[k] * lap_k;
      }
    }
    double push = 0.0;
    if (spec_.include_newtonian && th[i] > 0.0) push = inside[i] / shp[i];
    sorted.dtheta[i] = th[i] > 0.0 ? push - pull : 0.0;
    sorted.drho[i] = rho[i] * lap - (spec_.include_newtonian ? rho[i] * rho[i] : 0.0);
  }

  RadialRates out{std::vector<double>(n_nodes), std::vector<double>(n_nodes)};
  for (std::size_t i = 0; i < n_nodes; ++i) {
    out.dtheta[order[i]] = sorted.dtheta[i];
    out.drho[order[i]] = sorted.drho[i];
  }
  return out;
}

RadialState RadialSolver::step(const RadialState& s) const {
  const double h = cfg_.dt;
  const RadialRates k1 = rates(s);
  const RadialRates k2 = rates(axpy(s, 0.5 * h, k1));
  const RadialRates k3 = rates(axpy(s, 0.5 * h, k2));
  const RadialRates k4 = rates(axpy(s, h, k3));
  RadialState out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.radii[i] += h / 6.0 * (k1.dtheta[i] + 2.0 * k2.dtheta[i] + 2.0 * k3.dtheta[i] + k4.dtheta[i]);
    out.densities[i] += h / 6.0 * (k1.drho[i] + 2.0 * k2.drho[i] + 2.0 * k3.drho[i] + k4.drho[i]);
    out.densities[i] = std::max(0.0, out.densities[i]);
  }
  out.time = s.time + h;
  check_state(out);
  return out;
}

Trajectory RadialSolver::run(RadialState state) const {
  check_state(state);
  Trajectory traj;
  const double t0 = state.time;
  const auto total_steps = static_cast<std::size_t>(std::llround(cfg_.t_final / cfg_.dt));
  const auto every =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg_.sample_interval / cfg_.dt)));
  traj.samples.push_back(state);
  std::size_t last_sampled = 0;
  std::size_t k = 0;
  while (true) {
    traj.final_max_speed = rates(state).max_speed();
    if (cfg_.steady_tol > 0.0 && traj.final_max_speed < cfg_.steady_tol) {
      traj.reached_steady = true;
      break;
    }
    if (k == total_steps) break;
    state = step(state);
    ++k;
    state.time = t0 + cfg_.dt * static_cast<double>(k);
    if (!std::is_sorted(state.radii.begin(), state.radii.end())) {
      ++traj.crossings;
      const auto order = sort_order(state.radii);
      RadialState sorted = state;
      for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.radii[i] = state.radii[order[i]];
        sorted.densities[i] = state.densities[order[i]];
      }
      state = std::move(sorted);
    }
    if (k % every == 0) {
      traj.samples.push_back(state);
      last_sampled = k;
    }
  }
  if (last_sampled != k) traj.samples.push_back(state);
  traj.steps = k;
  return traj;
}

RadialRates rhs(const RadialState& s, const PotentialSpec& spec, const SolverConfig& cfg) {
  return RadialSolver(spec, cfg).rates(s);
}

RadialState rk4_step(const RadialState& s, const PotentialSpec& spec, const SolverConfig& cfg) {
  return RadialSolver(spec, cfg).step(s);
}

Trajectory run(const SolverConfig& cfg, const PotentialSpec& spec, const RadialState& initial) {
  return RadialSolver(spec, cfg).run(initial);
}

double interior_error(const RadialState& s, const EquilibriumSolution& eq, double fraction) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.radii[i] > fraction * eq.radius) continue;
    worst = std::max(worst, std::abs(s.densities[i] - eq.density(s.radii[i])));
  }
  return worst;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");
  const std::size_t n = traj.samples.front().size();
  std::vector<std::string> header{"t"};
  for (std::size_t i = 1; i <= n; ++i) header.push_back("theta_" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) header.push_back("rho_" + std::to_string(i));
  csv::write_header(out, header);
  std::vector<double> row;
  for (const auto& s : traj.samples) {
    row.clear();
    row.push_back(s.time);
    row.insert(row.end(), s.radii.begin(), s.radii.end());
    row.insert(row.end(), s.densities.begin(), s.densities.end());
    csv::write_row(out, row);
  }
}

}  // namespace hypagg
