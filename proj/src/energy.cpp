#include "hypagg/energy.hpp"

#include "hypagg/quadrature.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypagg {

namespace {

using std::numbers::pi;

double interp(const std::vector<double>& x, const std::vector<double>& y, double t) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double w = (t - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - w) * y[j - 1] + w * y[j];
}

// A(theta) as a function of c = cosh(theta). Families without a closed form in c are
// tabulated once per call site instead of running nested quadrature in the inner loop.
class AttractionValue {
 public:
  AttractionValue(const PotentialSpec& spec, double theta_max) : kernel_(spec) {
    const bool closed = spec.dim == 2 || (spec.attraction != Attraction::ConstantLaplacian &&
                                          spec.attraction != Attraction::Mixed);
    if (closed) return;
    constexpr std::size_t kTable = 4096;
    grid_.resize(kTable + 1);
    table_.resize(kTable + 1);
    for (std::size_t i = 0; i <= kTable; ++i) {
      grid_[i] = theta_max * static_cast<double>(i) / static_cast<double>(kTable);
      table_[i] = attraction_value(spec, grid_[i]);
    }
  }

  double operator()(double c) const {
    if (grid_.empty()) return kernel_.value(c);
    return interp(grid_, table_, arccosh1p(std::max(0.0, c - 1.0)));
  }

 private:
  AttractionKernel kernel_;
  std::vector<double> grid_;
  std::vector<double> table_;
};

void require_same_nodes(const RadialDensity& a, const RadialDensity& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (a.nodes() != b.nodes()) {
    throw std::invalid_argument("radial densities must share their node set");
  }
}

constexpr double kGauss2 = 0.57735026918962576451;

// int_0^pi A(d) d beta on H^2 with cosh d = a - b cos beta, in closed form. Every n = 2 family is
// a polynomial in cosh d plus a multiple of ln((1 + cosh d)/2), and
// int_0^pi ln(u - b cos beta) d beta = pi ln((u + sqrt(u^2 - b^2))/2).
double angular_integral_h2(const PotentialSpec& spec, double a, double b) {
  const double u = 1.0 + a;
  const double log_term = pi * std::log(0.25 * (u + std::sqrt((u - b) * (u + b))));
  const double linear = pi * a;
  const double square = pi * (a * a + 0.5 * b * b);
  switch (spec.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return log_term;
    case Attraction::HyperbolicCosine: return 0.5 * (linear - pi);
    case Attraction::Mixed: return spec.b0 * log_term + spec.b1 * 0.5 * (linear - pi);
    case Attraction::NonMonotone: return (square - pi) / 6.0 - 1.5 * linear + 3.0 * log_term;
  }
  return 0.0;
}

// Uniform panels on [0, R] merged with the density nodes, so every kink of rho sits on a grid point.
std::vector<double> merged_grid(const RadialDensity& rho, std::size_t panels) {
  const double rs = rho.support_radius();
  std::vector<double> g(rho.nodes());
  for (std::size_t i = 0; i <= panels; ++i) {
    g.push_back(rs * static_cast<double>(i) / static_cast<double>(panels));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [rs](double a, double b) { return std::abs(a - b) <= 1e-14 * rs; }),
          g.end());
  g.back() = rs;
  return g;
}

}  // namespace

double radial_mass(std::size_t dim, const std::vector<double>& nodes,
                   const std::vector<double>& values) {
  std::vector<double> f(nodes.size());
  const double p = static_cast<double>(dim - 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) f[i] = values[i] * std::pow(std::sinh(nodes[i]), p);
  return sphere_area(dim) * quad::trapezoid(nodes, f);
}

RadialDensity::RadialDensity(std::size_t dim, std::vector<double> nodes,
                             std::vector<double> values, double mass_tol)
    : dim_(dim), nodes_(std::move(nodes)), values_(std::move(values)) {
  if (dim_ < 2) throw std::invalid_argument("radial density needs dim >= 2");
  if (nodes_.size() < 2 || nodes_.size() != values_.size()) {
    throw std::invalid_argument("radial density needs >= 2 nodes with matching values");
  }
  if (nodes_.front() != 0.0) throw std::invalid_argument("first node must be the vertex (0)");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw std::invalid_argument("nodes must increase strictly");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("density must be >= 0");
  }
  const double m = radial_mass(dim_, nodes_, values_);
  if (std::abs(m - 1.0) > mass_tol) {
    throw std::invalid_argument("radial density mass " + std::to_string(m) + " is not 1");
  }
}

RadialDensity RadialDensity::normalized(std::size_t dim, std::vector<double> nodes,
                                        std::vector<double> values) {
  if (dim < 2 || nodes.size() != values.size()) throw std::invalid_argument("bad radial samples");
  const double m = radial_mass(dim, nodes, values);
  if (!(m > 0.0)) throw std::invalid_argument("radial density has no mass");
  for (double& v : values) v /= m;
  return RadialDensity(dim, std::move(nodes), std::move(values));
}

RadialDensity RadialDensity::from_equilibrium(const EquilibriumSolution& sol, std::size_t count) {
  if (count < 2) throw std::invalid_argument("need at least two nodes");
  std::vector<double> nodes(count), values(count);
  for (std::size_t i = 0; i < count; ++i) {
    nodes[i] = sol.radius * static_cast<double>(i) / static_cast<double>(count - 1);
    values[i] = sol.a0 + sol.a1 * std::cosh(nodes[i]);
  }
  return RadialDensity(sol.dim, std::move(nodes), std::move(values));
}

double RadialDensity::operator()(double theta) const {
  if (theta < 0.0 || theta > nodes_.back()) return 0.0;
  return interp(nodes_, values_, theta);
}

ParticleEnsemble ParticleEnsemble::uniform(std::vector<HPoint> points) {
  if (points.empty()) throw std::invalid_argument("empty ensemble");
  const double m = 1.0 / static_cast<double>(points.size());
  ParticleEnsemble e{std::move(points), {}};
  e.masses.assign(e.points.size(), m);
  return e;
}

void ParticleEnsemble::validate() const {
  if (points.empty() || points.size() != masses.size()) {
    throw std::invalid_argument("ensemble needs matching, non-empty points and masses");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(masses[i] > 0.0)) throw std::invalid_argument("particle masses must be positive");
    if (points[i].dim() != points.front().dim()) throw std::invalid_argument("mixed dimensions");
    total += masses[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("particle masses must sum to 1");
}

std::vector<double> lambda_at(const RadialDensity& rho, const PotentialSpec& spec,
                              const QuadratureSpec& q, const std::vector<double>& radii) {
  spec.validate();
  if (spec.dim != rho.dim()) throw std::invalid_argument("dimension mismatch");
  const std::size_t n = rho.dim();
  const double area = sphere_area(n);
  const double p = static_cast<double>(n - 1);
  const double rs = rho.support_radius();
  std::vector<double> out(radii.size(), 0.0);

  if (spec.include_newtonian) {
    const auto g = merged_grid(rho, q.theta_panels);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = area * rho(g[i]) * std::pow(std::sinh(g[i]), p);
    const auto mass_inside = quad::cumulative_trapezoid(g, f);
    const double total = mass_inside.back();
    std::vector<double> flux(g.size(), 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) {
      flux[i] = mass_inside[i] / (area * std::pow(std::sinh(g[i]), p));
    }
    std::vector<double> lam(g.size());
    lam.back() = total * green_phi(rs, n);
    for (std::size_t i = g.size() - 1; i-- > 0;) {
      lam[i] = lam[i + 1] + 0.5 * (g[i + 1] - g[i]) * (flux[i] + flux[i + 1]);
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
      out[k] += radii[k] >= rs ? total * green_phi(radii[k], n) : interp(g, lam, radii[k]);
    }
  }

  if (spec.attraction != Attraction::None) {
    const double r_max = radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
    const AttractionValue value(spec, r_max + rs + 1.0);
    // Two-point Gauss-Legendre on each piece where rho is linear.
    const auto g = merged_grid(rho, q.theta_panels);
    std::vector<double> cy, sy, my;
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double mid = 0.5 * (g[i] + g[i - 1]), half = 0.5 * (g[i] - g[i - 1]);
      for (double node : {-kGauss2, kGauss2}) {
        const double t = mid + half * node;
        cy.push_back(std::cosh(t));
        sy.push_back(std::sinh(t));
        my.push_back(half * rho(t) * std::pow(sy.back(), p));
      }
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
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double cx = std::cosh(radii[i]), sx = std::sinh(radii[i]);
      double total = 0.0;
      if (n == 2) {
        for (std::size_t j = 0; j < my.size(); ++j) {
          if (my[j] != 0.0) total += my[j] * angular_integral_h2(spec, cx * cy[j], sx * sy[j]);
        }
        out[i] += prefactor * total;
        continue;
      }
      for (std::size_t k = 0; k < wb.size(); ++k) {
        if (mb[k] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t j = 0; j < my.size(); ++j) {
          if (my[j] == 0.0) continue;
          inner += my[j] * value(std::max(1.0, cx * cy[j] - sx * sy[j] * cb[k]));
        }
        total += mb[k] * inner;
      }
      out[i] += prefactor * total;
    }
  }
  return out;
}

LambdaProfile lambda_radial(const RadialDensity& rho, const PotentialSpec& spec,
                            const QuadratureSpec& q, double r_max, std::size_t points) {
  if (points < 2) throw std::invalid_argument("need at least two profile points");
  LambdaProfile prof;
  prof.support_radius = rho.support_radius();
  if (r_max <= 0.0) r_max = 2.0 * prof.support_radius;
  prof.radii.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    prof.radii[i] = r_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  prof.values = lambda_at(rho, spec, q, prof.radii);
  return prof;
}

double energy_total(const RadialDensity& rho, const PotentialSpec& spec,
                    const QuadratureSpec& q) {
  constexpr std::size_t kOuterPanels = 256;
  const double rs = rho.support_radius();
  const double h = rs / static_cast<double>(kOuterPanels);
  std::vector<double> r(kOuterPanels + 1);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = h * static_cast<double>(i);
  const auto lam = lambda_at(rho, spec, q, r);
  const boost::math::interpolators::cardinal_cubic_b_spline<double> lam_fit(lam.begin(), lam.end(), 0.0, h);

  // rho is linear between its nodes, so integrate node interval by node interval.
  std::vector<double> g(rho.nodes());
  g.insert(g.end(), r.begin(), r.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [rs](double a, double b) { return b - a <= 1e-14 * rs; }), g.end());
  g.back() = rs;

  static constexpr double kNode[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double kWeight[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double p = static_cast<double>(rho.dim() - 1);
  double s = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double mid = 0.5 * (g[i] + g[i - 1]), half = 0.5 * (g[i] - g[i - 1]);
    for (int k = 0; k < 3; ++k) {
      const double t = mid + half * kNode[k];
      s += half * kWeight[k] * lam_fit(t) * rho(t) * std::pow(std::sinh(t), p);
    }
  }
  return 0.5 * sphere_area(rho.dim()) * s;
}

std::string EulerLagrangeReport::to_key_value() const {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "lambda = " << lambda << '\n'
     << "variation = " << variation << '\n'
     << "outside_gap = " << outside_gap << '\n'
     << "outside_min_step = " << outside_min_step << '\n'
     << "energy = " << energy << '\n'
     << "lambda_vs_2e = " << lambda_vs_2e << '\n';
  return os.str();
}

EulerLagrangeReport euler_lagrange_check(const RadialDensity& rho, const PotentialSpec& spec,
                                         const QuadratureSpec& q) {
  const LambdaProfile prof = lambda_radial(rho, spec, q);
  const double rs = prof.support_radius * (1.0 + 1e-12);
  EulerLagrangeReport rep;
  double sum = 0.0;
  std::size_t count = 0, last_inside = 0;
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    if (prof.radii[i] <= rs) {
      sum += prof.values[i];
      ++count;
      last_inside = i;
    }
  }
  rep.lambda = sum / static_cast<double>(count);
  rep.outside_gap = std::numeric_limits<double>::infinity();
  rep.outside_min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    if (prof.radii[i] <= rs) {
      rep.variation = std::max(rep.variation, std::abs(prof.values[i] - rep.lambda));
    } else {
      rep.outside_gap = std::min(rep.outside_gap, prof.values[i] - rep.lambda);
      if (i > last_inside) {
        rep.outside_min_step = std::min(rep.outside_min_step, prof.values[i] - prof.values[i - 1]);
      }
    }
  }
  rep.variation /= std::abs(rep.lambda);
  rep.energy = energy_total(rho, spec, q);
  rep.lambda_vs_2e = std::abs(rep.lambda - 2.0 * rep.energy) / std::abs(rep.lambda);
  return rep;
}

Vector moment_vector(const RadialDensity& rho) {
  const auto& x = rho.nodes();
  std::vector<double> f(x.size());
  const double p = static_cast<double>(rho.dim() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    f[i] = std::cosh(x[i]) * rho.values()[i] * std::pow(std::sinh(x[i]), p);
  }
  Vector c = Vector::Zero(static_cast<Eigen::Index>(rho.dim() + 1));
  c[0] = sphere_area(rho.dim()) * quad::trapezoid(x, f);
  return c;
}

Vector moment_vector(const ParticleEnsemble& ens) {
  ens.validate();
  Vector c = Vector::Zero(static_cast<Eigen::Index>(ens.dim() + 1));
  for (std::size_t i = 0; i < ens.size(); ++i) c += ens.masses[i] * ens.points[i].coords();
  return c;
}

double kappa(const RadialDensity& rho) {
  const Vector c = moment_vector(rho);
  return lorentz(c, c);
}

double kappa(const ParticleEnsemble& ens) {
  const Vector c = moment_vector(ens);
  return lorentz(c, c);
}

double convexity_gap(const RadialDensity& rho1, const RadialDensity& rho2, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("mixing weight must lie in (0, 1)");
  require_same_nodes(rho1, rho2);
  std::vector<double> mix(rho1.values().size());
  for (std::size_t i = 0; i < mix.size(); ++i) {
    mix[i] = t * rho1.values()[i] + (1.0 - t) * rho2.values()[i];
  }
  const RadialDensity mixed(rho1.dim(), rho1.nodes(), std::move(mix));
  return t * kappa(rho1) + (1.0 - t) * kappa(rho2) - kappa(mixed);
}

double convexity_gap(const ParticleEnsemble& e1, const ParticleEnsemble& e2, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("mixing weight must lie in (0, 1)");
  ParticleEnsemble mixed;
  for (std::size_t i = 0; i < e1.size(); ++i) {
    mixed.points.push_back(e1.points[i]);
    mixed.masses.push_back(t * e1.masses[i]);
  }
  for (std::size_t i = 0; i < e2.size(); ++i) {
    mixed.points.push_back(e2.points[i]);
    mixed.masses.push_back((1.0 - t) * e2.masses[i]);
  }
  return t * kappa(e1) + (1.0 - t) * kappa(e2) - kappa(mixed);
}

ParticleEnsemble center(const ParticleEnsemble& ens) {
  const Vector c = moment_vector(ens);
  const HPoint c_hat = lift(c / std::sqrt(lorentz(c, c)));
  ParticleEnsemble out;
  out.masses = ens.masses;
  out.points.reserve(ens.size());
  for (const auto& x : ens.points) out.points.push_back(translate_sub(x, c_hat));
  return out;
}

double discrete_energy(const ParticleEnsemble& ens, const PotentialSpec& spec) {
  ens.validate();
  double e = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = i + 1; j < ens.size(); ++j) {
      const double d = geodesic_distance(ens.points[i], ens.points[j]);
      if (d == 0.0) continue;
      e += ens.masses[i] * ens.masses[j] * potential_value(spec, d);
    }
  }
  return e;
}

}  // namespace hypagg
