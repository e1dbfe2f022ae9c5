// hypagg: equilibria, radial and particle simulations, energies and verification suites
// for aggregation with Newtonian repulsion on the hyperbolic space H^n.

#include "hypagg/config.hpp"
#include "hypagg/csv.hpp"
#include "hypagg/energy.hpp"
#include "hypagg/equilibria.hpp"
#include "hypagg/particle_sim.hpp"
#include "hypagg/radial_solver.hpp"
#include "hypagg/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace hypagg;

namespace {

struct PotentialArgs {
  std::size_t dim = 2;
  std::string attraction = "constant";
  double b0 = 2.0;
  double b1 = -1.0;
  bool newtonian = true;

  PotentialSpec spec() const {
    PotentialSpec s;
    s.dim = dim;
    s.attraction = parse_attraction(attraction);
    if (s.attraction == Attraction::Mixed) {
      s.b0 = b0;
      s.b1 = b1;
    }
    s.include_newtonian = newtonian;
    s.validate();
    return s;
  }
};

void add_potential_flags(CLI::App* app, PotentialArgs& p) {
  app->add_option("--dim", p.dim, "Dimension n of H^n")->capture_default_str();
  app->add_option("--attraction", p.attraction, "constant|cosh|mixed|nonmonotone|none")
      ->capture_default_str();
  app->add_option("--b0", p.b0, "Mixed attraction weight of the constant-Laplacian part")
      ->capture_default_str();
  app->add_option("--b1", p.b1, "Mixed attraction weight of the cosh part")->capture_default_str();
  app->add_option("--newtonian", p.newtonian, "Include Newtonian repulsion")->capture_default_str();
}

// Values from a key = value file fill the options that were not given as flags.
void apply_config(CLI::App* app, const std::string& path) {
  for (const auto& [key, value] : config::load(path)) {
    CLI::Option* opt = key == "config" ? nullptr : app->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw std::invalid_argument("unknown config key '" + key + "' for command " + app->get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::optional<EquilibriumSolution> closed_form(const PotentialSpec& spec) {
  if (!spec.include_newtonian) return std::nullopt;
  switch (spec.attraction) {
    case Attraction::ConstantLaplacian: return equilibrium_constant(spec.dim);
    case Attraction::HyperbolicCosine: return equilibrium_cosh(spec.dim);
    case Attraction::Mixed:
      if (spec.dim == 2) return mixed_equilibrium(spec.b0, spec.b1);
      return std::nullopt;
    default: return std::nullopt;
  }
}

// Runs `write` against --out, or stdout when no path was given.
template <typename F>
void emit_csv(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::ostream& g6(std::ostream& os) { return os << std::setprecision(6); }

int cmd_equilibrium(const PotentialArgs& p, const std::string& out_path, std::size_t samples) {
  const PotentialSpec spec = p.spec();
  const auto sol = closed_form(spec);
  if (!sol) {
    std::cerr << "error: no closed-form equilibrium for attraction '" << p.attraction << "' with n = "
              << p.dim << (p.newtonian ? "" : " without Newtonian repulsion") << '\n';
    return 2;
  }
  const double mass = sol->mass();
  std::cout << g6 << "R = " << sol->radius << "\na0 = " << sol->a0 << "\na1 = " << sol->a1
            << "\nmass = " << mass << '\n';
  if (!out_path.empty()) {
    emit_csv(out_path, [&](std::ostream& os) { write_equilibrium_csv(os, *sol, samples); });
  }
  if (std::abs(mass - 1.0) > 1e-8) {
    std::cerr << "error: mass check failed\n";
    return 1;
  }
  return 0;
}

int cmd_simulate_radial(const PotentialArgs& p, const SolverConfig& cfg, const std::string& out_path) {
  const PotentialSpec spec = p.spec();
  SolverConfig c = cfg;
  c.dim = p.dim;
  const RadialSolver solver(spec, c);
  const RadialState init = initial_state(c);
  const Trajectory traj = solver.run(init);
  const RadialState& last = traj.samples.back();

  emit_csv(out_path, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  std::ostream& log = out_path.empty() || out_path == "-" ? std::cerr : std::cout;
  log << g6 << "t_end = " << last.time << "\nsteps = " << traj.steps
      << "\nsteady = " << (traj.reached_steady ? "yes" : "no") << "\nmax_speed = " << traj.final_max_speed
      << "\nmass_drift = " << std::abs(state_mass(last, c.dim) - state_mass(init, c.dim))
      << "\ncrossings = " << traj.crossings << '\n';
  if (const auto sol = closed_form(spec)) {
    log << "interior_error = " << interior_error(last, *sol) << '\n';
  }
  return traj.crossings == 0 ? 0 : 1;
}

int cmd_simulate_particles(const PotentialArgs& p, ParticleSimConfig cfg, const std::string& out_path) {
  const PotentialSpec spec = p.spec();
  cfg.dim = p.dim;
  cfg.record_energy = true;
  const ParticleTrajectory traj = run(cfg, spec, random_ensemble(cfg));
  emit_csv(out_path, [&](std::ostream& os) { write_snapshots_csv(os, traj); });
  std::ostream& log = out_path.empty() || out_path == "-" ? std::cerr : std::cout;
  const auto& first = traj.snapshots.front();
  const auto& last = traj.snapshots.back();
  log << g6 << "t_end = " << last.time << "\nsteps = " << traj.steps << "\nenergy_initial = " << first.energy
      << "\nenergy_final = " << last.energy << "\ndiameter = " << support_diameter(last.ensemble) << '\n';
  if (const auto sol = closed_form(spec)) log << "equilibrium_diameter = " << 2.0 * sol->radius << '\n';
  return 0;
}

// Energy of each sample in a radial trajectory CSV, or of the closed-form equilibrium.
int cmd_energy(const PotentialArgs& p, const std::string& input, const std::string& out_path) {
  const PotentialSpec spec = p.spec();
  if (input.empty()) {
    const auto sol = closed_form(spec);
    if (!sol) {
      std::cerr << "error: no closed-form equilibrium; pass --input with a trajectory CSV\n";
      return 2;
    }
    const auto rep = euler_lagrange_check(RadialDensity::from_equilibrium(*sol), spec);
    std::cout << rep.to_key_value();
    return 0;
  }
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const csv::Table table = csv::read(in);
  const std::size_t cols = table.header.size();
  if (cols < 3 || cols % 2 == 0 || table.header[0] != "t") {
    throw std::invalid_argument(input + " is not a radial trajectory CSV");
  }
  const std::size_t n = (cols - 1) / 2;
  emit_csv(out_path, [&](std::ostream& os) {
    os << "t,energy\n";
    for (const auto& row : table.rows) {
      std::vector<double> nodes(row.begin() + 1, row.begin() + 1 + static_cast<std::ptrdiff_t>(n));
      std::vector<double> values(row.begin() + 1 + static_cast<std::ptrdiff_t>(n), row.end());
      const RadialDensity rho = RadialDensity::normalized(p.dim, std::move(nodes), std::move(values));
      const double e[2] = {row[0], energy_total(rho, spec)};
      csv::write_row(os, e);
    }
  });
  return 0;
}

int cmd_verify(const std::string& target, const PotentialArgs& p, std::size_t samples, std::uint64_t seed) {
  std::vector<verify::CheckResult> results;
  auto append = [&](std::vector<verify::CheckResult> r) { results.insert(results.end(), r.begin(), r.end()); };
  const bool all = target == "all";
  if (all || target == "geometry") {
    verify::GeometryOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    append(verify::geometry_suite(opt));
  }
  if (all || target == "constants") append(verify::closed_form_constants());
  if (all || target == "residuals") append(verify::equilibrium_residuals());
  if (target == "euler-lagrange") append(verify::euler_lagrange(p.spec()));
  if (all) {
    append(verify::euler_lagrange(PotentialSpec::constant(2)));
    append(verify::euler_lagrange(PotentialSpec::cosh(2)));
  }
  if (all || target == "convexity") {
    verify::ConvexityOptions opt;
    opt.seed = seed;
    append(verify::convexity_suite(opt));
  }
  if (results.empty()) {
    std::cerr << "error: unknown verify target '" << target
              << "' (geometry|constants|residuals|euler-lagrange|convexity|all)\n";
    return 2;
  }
  verify::print(std::cout, results);
  return verify::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregation with Newtonian repulsion on the hyperbolic space H^n"};
  app.require_subcommand(1);

  PotentialArgs pot;
  std::string out_path;
  std::string config_path;
  auto common = [&](CLI::App* sub) {
    add_potential_flags(sub, pot);
    sub->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
    sub->add_option("--config", config_path, "key = value file; flags take precedence")
        ->check(CLI::ExistingFile);
  };

  auto* eq = app.add_subcommand("equilibrium", "Closed-form steady state: print R, a0, a1 and sample it");
  std::size_t eq_samples = 201;
  common(eq);
  eq->add_option("--samples", eq_samples, "Uniform samples on [0, 1.25 R]")->capture_default_str();

  SolverConfig scfg;
  auto* sr = app.add_subcommand("simulate-radial", "RK4 on the radial characteristic system");
  common(sr);
  sr->add_option("--dt", scfg.dt, "Time step")->capture_default_str();
  sr->add_option("--t-final", scfg.t_final, "Final time")->capture_default_str();
  sr->add_option("--nodes", scfg.n_nodes, "Number of characteristics N")->capture_default_str();
  sr->add_option("--dx", scfg.dx, "Initial node spacing")->capture_default_str();
  sr->add_option("--beta-panels", scfg.beta_panels, "Angular Simpson panels")->capture_default_str();
  sr->add_option("--steady-tol", scfg.steady_tol, "Stop once max |dtheta/dt| < tol (<= 0 disables)")
      ->capture_default_str();
  sr->add_option("--sample-interval", scfg.sample_interval, "Time between CSV rows")->capture_default_str();

  ParticleSimConfig pcfg;
  auto* sp = app.add_subcommand("simulate-particles", "Particle method with geodesic forward Euler");
  common(sp);
  sp->add_option("--dt", pcfg.dt, "Time step")->capture_default_str();
  sp->add_option("--t-final", pcfg.t_final, "Final time")->capture_default_str();
  sp->add_option("--nodes", pcfg.count, "Number of particles M")->capture_default_str();
  sp->add_option("--seed", pcfg.seed, "Seed for the initial ensemble")->capture_default_str();
  sp->add_option("--delta", pcfg.delta, "Distance clamp inside K'")->capture_default_str();
  sp->add_option("--init-radius", pcfg.init_radius, "Initial particles uniform in B_r(v)")
      ->capture_default_str();
  sp->add_option("--snapshot-interval", pcfg.snapshot_interval, "Time between snapshots")
      ->capture_default_str();

  auto* en = app.add_subcommand("energy", "Energy of a trajectory's samples or of the closed-form equilibrium");
  std::string energy_input;
  common(en);
  en->add_option("--input", energy_input, "Radial trajectory CSV");

  auto* vf = app.add_subcommand("verify", "Run a verification suite; nonzero exit on any failure");
  std::string target = "all";
  std::size_t v_samples = 10000;
  std::uint64_t v_seed = 20240611;
  common(vf);
  vf->add_option("target", target, "geometry|constants|residuals|euler-lagrange|convexity|all")
      ->capture_default_str();
  vf->add_option("--samples", v_samples, "Random instances per identity")->capture_default_str();
  vf->add_option("--seed", v_seed, "Random seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(sub, config_path);
    if (sub == eq) return cmd_equilibrium(pot, out_path, eq_samples);
    if (sub == sr) return cmd_simulate_radial(pot, scfg, out_path);
    if (sub == sp) return cmd_simulate_particles(pot, pcfg, out_path);
    if (sub == en) return cmd_energy(pot, energy_input, out_path);
    if (sub == vf) return cmd_verify(target, pot, v_samples, v_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
