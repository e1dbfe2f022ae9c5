#include "hypagg/energy.hpp"
#include "hypagg/equilibria.hpp"
#include "hypagg/hyperboloid.hpp"
#include "hypagg/particle_sim.hpp"
#include "hypagg/potentials.hpp"
#include "hypagg/radial_solver.hpp"
#include "hypagg/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hypagg;

namespace {

// Points cross the boundary as plain (n+1)-vectors and are validated on the way in.
HPoint point(const Vector& x) { return HPoint(x); }

py::dict trajectory_dict(const Trajectory& traj) {
  const std::size_t rows = traj.samples.size();
  const std::size_t n = traj.samples.front().size();
  Vector t(static_cast<Eigen::Index>(rows));
  Matrix theta(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  Matrix rho(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& s = traj.samples[r];
    t[static_cast<Eigen::Index>(r)] = s.time;
    for (std::size_t i = 0; i < n; ++i) {
      theta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = s.radii[i];
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = s.densities[i];
    }
  }
  py::dict d;
  d["t"] = t;
  d["theta"] = theta;
  d["rho"] = rho;
  d["reached_steady"] = traj.reached_steady;
  d["final_max_speed"] = traj.final_max_speed;
  d["crossings"] = traj.crossings;
  return d;
}

Matrix ensemble_matrix(const ParticleEnsemble& ens) {
  Matrix m(static_cast<Eigen::Index>(ens.size()), static_cast<Eigen::Index>(ens.dim() + 1));
  for (std::size_t i = 0; i < ens.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = ens.points[i].coords();
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hyperboloid geometry, Newtonian-repulsion potentials, equilibria and solvers on H^n";

  // geometry
  m.def("vertex", [](std::size_t n) { return HPoint::vertex(n).coords(); }, py::arg("n"));
  m.def("lift", [](Vector x) { return lift(std::move(x)).coords(); }, py::arg("x"),
        "Recompute x0 from the spatial part.");
  m.def("minkowski_inner", [](const Vector& x, const Vector& y) { return minkowski_inner(point(x), point(y)); });
  m.def("geodesic_distance", [](const Vector& x, const Vector& y) { return geodesic_distance(point(x), point(y)); });
  m.def("boost_matrix", [](const Vector& w) { return boost_matrix(BoostParam(w)); }, py::arg("w"));
  m.def("apply_isometry", [](const Vector& w, const Vector& x) { return apply_isometry(BoostParam(w), point(x)).coords(); },
        py::arg("w"), py::arg("x"));
  m.def("translate_add", [](const Vector& x, const Vector& y) { return translate_add(point(x), point(y)).coords(); });
  m.def("translate_sub", [](const Vector& x, const Vector& y) { return translate_sub(point(x), point(y)).coords(); });
  m.def("neg", [](const Vector& x) { return neg(point(x)).coords(); });
  m.def("u_k", [](std::size_t n, std::size_t k, double a) { return u_k(n, k, a).coords(); },
        py::arg("n"), py::arg("k"), py::arg("a"));
  m.def("pi_k", [](std::size_t k, const Vector& x) { return pi_k(k, point(x)); }, py::arg("k"), py::arg("x"));
  m.def("decompose_k", [](std::size_t k, const Vector& x) {
    const Decomposition d = decompose_k(k, point(x));
    return py::make_tuple(d.a, d.y.coords());
  }, py::arg("k"), py::arg("x"));
  m.def("reflect_k", [](std::size_t k, double a, const Vector& x) { return reflect_k(k, a, point(x)).coords(); },
        py::arg("k"), py::arg("a"), py::arg("x"));
  m.def("exp_map", [](const Vector& x, const Vector& t) { return exp_map(point(x), t).coords(); });
  m.def("log_map", [](const Vector& x, const Vector& y) { return Vector(log_map(point(x), point(y))); });

  // potentials
  py::enum_<Attraction>(m, "Attraction")
      .value("none", Attraction::None)
      .value("constant", Attraction::ConstantLaplacian)
      .value("cosh", Attraction::HyperbolicCosine)
      .value("mixed", Attraction::Mixed)
      .value("nonmonotone", Attraction::NonMonotone);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init([](const std::string& attraction, std::size_t dim, double b0, double b1, bool newtonian) {
             PotentialSpec s{dim, parse_attraction(attraction), b0, b1, newtonian};
             s.validate();
             return s;
           }),
           py::arg("attraction") = "constant", py::arg("dim") = 2, py::arg("b0") = 0.0, py::arg("b1") = 0.0,
           py::arg("newtonian") = true)
      .def_readonly("dim", &PotentialSpec::dim)
      .def_readonly("attraction", &PotentialSpec::attraction)
      .def_readonly("b0", &PotentialSpec::b0)
      .def_readonly("b1", &PotentialSpec::b1)
      .def_readonly("newtonian", &PotentialSpec::include_newtonian);

  m.def("green_phi", &green_phi, py::arg("theta"), py::arg("n"));
  m.def("green_phi_prime", &green_phi_prime, py::arg("theta"), py::arg("n"));
  m.def("attraction_value", &attraction_value, py::arg("spec"), py::arg("theta"));
  m.def("attraction_prime", &attraction_prime, py::arg("spec"), py::arg("theta"));
  m.def("attraction_laplacian", &attraction_laplacian, py::arg("spec"), py::arg("theta"));
  m.def("potential_value", &potential_value, py::arg("spec"), py::arg("theta"));
  m.def("potential_force", &potential_force, py::arg("spec"), py::arg("theta"));

  // equilibria
  py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
      .def_readonly("dim", &EquilibriumSolution::dim)
      .def_readonly("radius", &EquilibriumSolution::radius)
      .def_readonly("a0", &EquilibriumSolution::a0)
      .def_readonly("a1", &EquilibriumSolution::a1)
      .def("density", &EquilibriumSolution::density)
      .def("mass", &EquilibriumSolution::mass);
  m.def("radius_constant", &radius_constant, py::arg("n") = 2);
  m.def("radius_cosh", &radius_cosh, py::arg("n") = 2);
  m.def("equilibrium_constant", &equilibrium_constant, py::arg("n") = 2);
  m.def("equilibrium_cosh", &equilibrium_cosh, py::arg("n") = 2);
  m.def("mixed_equilibrium", &mixed_equilibrium, py::arg("b0"), py::arg("b1"));
  m.def("integral_residual",
        [](const EquilibriumSolution& sol, const PotentialSpec& spec) { return integral_residual(sol, spec); });
  m.def("euler_lagrange", [](const EquilibriumSolution& sol, const PotentialSpec& spec) {
    const auto rep = euler_lagrange_check(RadialDensity::from_equilibrium(sol), spec);
    py::dict d;
    d["lambda"] = rep.lambda;
    d["variation"] = rep.variation;
    d["outside_gap"] = rep.outside_gap;
    d["outside_min_step"] = rep.outside_min_step;
    d["energy"] = rep.energy;
    return d;
  });

  // dynamics
  m.def("initial_density", &initial_density, py::arg("theta"), py::arg("n") = 2);
  m.def("simulate_radial",
        [](const PotentialSpec& spec, double dt, double t_final, std::size_t nodes, double dx, double steady_tol) {
          SolverConfig cfg;
          cfg.dim = spec.dim;
          cfg.dt = dt;
          cfg.t_final = t_final;
          cfg.n_nodes = nodes;
          cfg.dx = dx;
          cfg.steady_tol = steady_tol;
          Trajectory traj;
          {
            py::gil_scoped_release release;
            traj = RadialSolver(spec, cfg).run(initial_state(cfg));
          }
          return trajectory_dict(traj);
        },
        py::arg("spec"), py::arg("dt") = 0.02, py::arg("t_final") = 20.0, py::arg("nodes") = 51,
        py::arg("dx") = 0.02, py::arg("steady_tol") = 1e-4);
  m.def("simulate_particles",
        [](const PotentialSpec& spec, std::size_t count, double dt, double t_final, std::uint64_t seed, double delta) {
          ParticleSimConfig cfg;
          cfg.dim = spec.dim;
          cfg.count = count;
          cfg.dt = dt;
          cfg.t_final = t_final;
          cfg.seed = seed;
          cfg.delta = delta;
          cfg.snapshot_interval = t_final > 0.0 ? t_final : 1.0;
          ParticleTrajectory traj;
          {
            py::gil_scoped_release release;
            traj = run(cfg, spec, random_ensemble(cfg));
          }
          return py::make_tuple(ensemble_matrix(traj.snapshots.front().ensemble),
                                ensemble_matrix(traj.snapshots.back().ensemble));
        },
        py::arg("spec"), py::arg("count") = 50, py::arg("dt") = 0.01, py::arg("t_final") = 1.0,
        py::arg("seed") = 1, py::arg("delta") = 1e-3,
        "Returns (initial, final) particle coordinates as (count, n+1) arrays.");

  // verification
  m.def("verify_geometry", [](std::size_t samples, std::uint64_t seed) {
    verify::GeometryOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    py::list out;
    for (const auto& r : verify::geometry_suite(opt)) out.append(py::make_tuple(r.name, r.passed, r.measured));
    return out;
  }, py::arg("samples") = 1000, py::arg("seed") = 1);
}
