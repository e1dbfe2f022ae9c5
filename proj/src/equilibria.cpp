#include "hypagg/equilibria.hpp"

#include "hypagg/csv.hpp"
#include "hypagg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypagg {

namespace {

using std::numbers::pi;

constexpr double kRootGridMax = 50.0;
constexpr std::size_t kRootGridPoints = 10000;
constexpr double kRootTol = 1e-12;
constexpr double kNonnegTol = 1e-10;
constexpr double kMassTol = 1e-8;

// Bisection on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of an increasing g with g(0) < 0.
template <typename F>
double increasing_root(F&& g) {
  double hi = 1.0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e3) throw std::runtime_error("radius bracket search diverged");
  }
  return bisect(g, 0.0, hi, 1e-15);
}

void require_dim(std::size_t n) {
  if (n < 2) throw std::invalid_argument("equilibria need dimension n >= 2");
}

}  // namespace

double EquilibriumSolution::density(double theta) const {
  if (theta < 0.0 || theta > radius) return 0.0;
  return a0 + a1 * std::cosh(theta);
}

double EquilibriumSolution::mass() const {
  const double area = sphere_area(dim);
  const double sr = std::sinh(radius);
  const double nd = static_cast<double>(dim);
  // int_0^R cosh sinh^{n-1} = sinh^n R / n
  return area * (a0 * sinh_power_integral(dim - 1, radius) + a1 * std::pow(sr, nd) / nd);
}

double radius_constant(std::size_t n) {
  require_dim(n);
  if (n == 2) return std::acosh(1.0 + 1.0 / (2.0 * pi));
  const double area = sphere_area(n);
  return increasing_root([&](double r) { return area * sinh_power_integral(n - 1, r) - 1.0; });
}

EquilibriumSolution equilibrium_constant(std::size_t n) {
  return {n, radius_constant(n), 1.0, 0.0};
}

double radius_cosh(std::size_t n) {
  require_dim(n);
  if (n == 2) return std::acosh(std::cbrt(1.0 + 3.0 / (2.0 * pi)));
  const double area = sphere_area(n);
  // sinh^{n-1} cosh^2 = sinh^{n-1} + sinh^{n+1}
  return increasing_root([&](double r) {
    return area * (sinh_power_integral(n - 1, r) + sinh_power_integral(n + 1, r)) - 1.0;
  });
}

EquilibriumSolution equilibrium_cosh(std::size_t n) {
  const double r = radius_cosh(n);
  const double a1 = 1.0 / (unit_ball_volume(n) * std::pow(std::sinh(r), static_cast<double>(n)));
  return {n, r, 0.0, a1};
}

double mixed_quartic(double b0, double b1, double x) {
  const double x2 = x * x;
  return 1.0 - 2.0 * pi * (b0 + b1) * x - 2.0 * pi * b1 * x2 - (2.0 * pi / 3.0) * b1 * x2 * x +
         (pi * pi / 3.0) * b0 * b1 * x2 * x2;
}

std::vector<double> mixed_quartic_roots(double b0, double b1) {
  std::vector<double> roots;
  auto f = [&](double x) { return mixed_quartic(b0, b1, x); };
  const double h = kRootGridMax / static_cast<double>(kRootGridPoints);
  double x_prev = 0.0;
  double f_prev = f(0.0);
  for (std::size_t i = 1; i <= kRootGridPoints; ++i) {
    const double x = h * static_cast<double>(i);
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (fx < 0.0) != (f_prev < 0.0)) {
      roots.push_back(bisect(f, x_prev, x, kRootTol));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

EquilibriumSolution mixed_candidate(double b0, double b1, double root) {
  if (!(root > 0.0)) throw std::invalid_argument("quartic root must be positive");
  const double c = 1.0 / (pi * root * (root + 2.0));
  return {2, std::acosh(root + 1.0), b0, c * (1.0 - 2.0 * pi * b0 * root)};
}

EquilibriumSolution mixed_equilibrium(double b0, double b1) {
  if (b0 == 0.0 && b1 == 0.0) throw std::invalid_argument("(b0, b1) must not both vanish");
  for (double root : mixed_quartic_roots(b0, b1)) {
    const EquilibriumSolution sol = mixed_candidate(b0, b1, root);
    // Linear in cosh(theta): nonnegative on [0, R] iff nonnegative at both ends.
    const double at_center = sol.a0 + sol.a1;
    const double at_edge = sol.a0 + sol.a1 * (root + 1.0);
    if (at_center < -kNonnegTol || at_edge < -kNonnegTol) continue;
    if (std::abs(sol.mass() - 1.0) > kMassTol) continue;
    return sol;
  }
  throw std::domain_error("no admissible equilibrium for b0 = " + std::to_string(b0) +
                          ", b1 = " + std::to_string(b1));
}

double integral_residual(const EquilibriumSolution& sol, const PotentialSpec& spec,
                         const QuadratureSpec& q) {
  spec.validate();
  if (!spec.include_newtonian) {
    throw std::invalid_argument("integral residual assumes Newtonian repulsion");
  }
  if (spec.dim != sol.dim) throw std::invalid_argument("dimension mismatch");
  if (q.test_radii < 2) throw std::invalid_argument("need at least two test radii");
  const std::size_t n = sol.dim;
  const AttractionKernel kernel(spec);
  const double R = sol.radius;

  const double hy = R / static_cast<double>(q.theta_panels);
  const auto wy = quad::simpson_weights(q.theta_panels, hy);
  std::vector<double> cy(wy.size()), sy(wy.size()), my(wy.size());
  for (std::size_t j = 0; j < wy.size(); ++j) {
    const double t = hy * static_cast<double>(j);
    cy[j] = std::cosh(t);
    sy[j] = std::sinh(t);
    my[j] = wy[j] * sol.density(t) * std::pow(sy[j], static_cast<double>(n - 1));
  }
  const double hb = pi / static_cast<double>(q.beta_panels);
  const auto wb = quad::simpson_weights(q.beta_panels, hb);
  std::vector<double> cb(wb.size()), mb(wb.size());
  for (std::size_t k = 0; k < wb.size(); ++k) {
    const double b = hb * static_cast<double>(k);
    cb[k] = std::cos(b);
    mb[k] = wb[k] * std::pow(std::sin(b), static_cast<double>(n - 2));
  }
  const double prefactor = sphere_area(n - 1);

  double worst = 0.0;
  for (std::size_t i = 0; i < q.test_radii; ++i) {
    const double tx = R * static_cast<double>(i) / static_cast<double>(q.test_radii - 1);
    const double cx = std::cosh(tx), sx = std::sinh(tx);
    double total = 0.0;
    for (std::size_t k = 0; k < wb.size(); ++k) {
      if (mb[k] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t j = 0; j < wy.size(); ++j) {
        const double c = std::max(1.0, cx * cy[j] - sx * sy[j] * cb[k]);
        inner += my[j] * kernel.laplacian(c);
      }
      total += mb[k] * inner;
    }
    worst = std::max(worst, std::abs(sol.density(tx) - prefactor * total));
  }
  return worst;
}

void write_equilibrium_csv(std::ostream& out, const EquilibriumSolution& sol, std::size_t samples,
                           double theta_max) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (theta_max <= 0.0) theta_max = 1.25 * sol.radius;
  out << "theta,rho\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = theta_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double row[2] = {t, sol.density(t)};
    csv::write_row(out, row);
  }
}

}  // namespace hypagg
