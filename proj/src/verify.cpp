#include "hypagg/verify.hpp"

#include "hypagg/energy.hpp"
#include "hypagg/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace hypagg::verify {

namespace {

using std::numbers::pi;

constexpr double kAlgebraTol = 1e-10;
constexpr double kDistanceTol = 1e-11;

struct Sampler {
  std::mt19937_64 rng;
  std::size_t dim;
  double max_radius;
  double max_boost;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  Vector direction() {
    std::normal_distribution<double> normal;
    Vector xi(static_cast<Eigen::Index>(dim));
    do {
      for (auto& v : xi) v = normal(rng);
    } while (xi.norm() == 0.0);
    return xi / xi.norm();
  }

  HPoint point() { return from_polar({uniform(0.0, max_radius), direction()}); }

  HPoint point_on_axis_plane(std::size_t k) {
    Vector x = point().coords();
    x[static_cast<Eigen::Index>(k)] = 0.0;
    return lift(std::move(x));
  }

  BoostParam boost() { return BoostParam(uniform(0.0, max_boost) * direction()); }

  std::size_t axis() { return std::uniform_int_distribution<std::size_t>(1, dim)(rng); }
};

// Coordinate error of two points relative to their size.
double point_error(const HPoint& a, const HPoint& b) {
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff() / std::max(1.0, std::abs(a[0]));
}

class Accumulator {
 public:
  Accumulator(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void add(double err) {
    if (!(err <= worst_)) worst_ = std::isnan(err) ? err : std::max(worst_, err);
  }
  CheckResult result(std::size_t samples) const {
    CheckResult r;
    r.name = name_;
    r.measured = worst_;
    r.tolerance = tol_;
    r.passed = worst_ <= tol_;
    r.detail = std::to_string(samples) + " samples";
    return r;
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
};

CheckResult bound(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), std::abs(measured) <= tol, measured, tol, std::move(detail)};
}

EquilibriumSolution equilibrium_for(const PotentialSpec& spec) {
  switch (spec.attraction) {
    case Attraction::ConstantLaplacian: return equilibrium_constant(spec.dim);
    case Attraction::HyperbolicCosine: return equilibrium_cosh(spec.dim);
    case Attraction::Mixed:
      if (spec.dim != 2) break;
      return mixed_equilibrium(spec.b0, spec.b1);
    default: break;
  }
  throw std::invalid_argument("no closed-form equilibrium for attraction '" +
                              std::string(to_string(spec.attraction)) + "' in dimension " +
                              std::to_string(spec.dim));
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void print(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    std::ostringstream line;
    line.precision(3);
    line << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << std::scientific << r.measured
         << " tol=" << r.tolerance;
    if (!r.detail.empty()) line << "  (" << r.detail << ")";
    out << line.str() << '\n';
  }
}

std::vector<CheckResult> geometry_suite(const GeometryOptions& opt) {
  std::vector<CheckResult> out;
  for (std::size_t n : opt.dims) {
    Sampler s{std::mt19937_64(opt.seed + n), n, opt.max_radius, opt.max_boost};
    const std::string tag = " n=" + std::to_string(n);
    const HPoint v = HPoint::vertex(n);

    Accumulator lorentz_form("boost preserves Lorentz form" + tag, 1e-12);
    Accumulator isometry("boost preserves distance" + tag, kDistanceTol);
    Accumulator equiv("boost equivalences" + tag, kAlgebraTol);
    Accumulator identity("+' identity and inverse" + tag, kAlgebraTol);
    Accumulator coord_form("+' coordinate form" + tag, kAlgebraTol);
    Accumulator neg_hom("-(x+'y) = (-x)+'(-y)" + tag, kAlgebraTol);
    Accumulator cancel("(x+'y)-'y = x" + tag, kAlgebraTol);
    Accumulator cosh_d("(x-'y)_0 = cosh d" + tag, kAlgebraTol);
    Accumulator translate_iso("translations and reflections preserve distance" + tag, kDistanceTol);
    Accumulator compose("u_k composition on P_k(0)" + tag, kAlgebraTol);
    Accumulator roundtrip("decomposition round trip" + tag, 1e-11);
    Accumulator shift("pi_k shift" + tag, kAlgebraTol);
    Accumulator pi_bound("pi_k distance bound" + tag, 0.0);
    Accumulator reflect("reflection involution and fixed set" + tag, kAlgebraTol);
    Accumulator expmap("exp/log round trip" + tag, kAlgebraTol);

    const Matrix eta = [&] {
      Matrix e = -Matrix::Identity(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
      e(0, 0) = 1.0;
      return e;
    }();

    for (std::size_t it = 0; it < opt.samples; ++it) {
      const HPoint x = s.point();
      const HPoint y = s.point();
      const BoostParam w = s.boost();
      const double d = geodesic_distance(x, y);

      const Matrix b = boost_matrix(w);
      const double g2 = w.gamma() * w.gamma();
      lorentz_form.add((b.transpose() * eta * b - eta).cwiseAbs().maxCoeff() / g2);
      isometry.add(std::abs(geodesic_distance(apply_isometry(w, x), apply_isometry(w, y)) - d));

      // F_w(x) = v, F_w(v) = (x0, -x1, ..), and w = x_hat are equivalent.
      const BoostParam xh = BoostParam::toward_vertex(x);
      equiv.add(point_error(apply_isometry(xh, x), v));
      equiv.add(point_error(apply_isometry(xh, v), neg(x)));
      const HPoint z = apply_isometry(BoostParam(-w.w()), v);
      equiv.add((z.spatial() / z[0] - w.w()).cwiseAbs().maxCoeff());

      identity.add(point_error(translate_add(x, v), x));
      identity.add(point_error(translate_add(v, x), x));
      identity.add(point_error(translate_add(x, neg(x)), v));
      identity.add(point_error(translate_add(neg(x), x), v));

      coord_form.add(point_error(translate_add(x, y), apply_isometry(BoostParam(-y.spatial() / y[0]), x)));

      neg_hom.add(point_error(neg(translate_add(x, y)), translate_add(neg(x), neg(y))));
      cancel.add(point_error(translate_sub(translate_add(x, y), y), x));
      cosh_d.add(std::abs(translate_sub(x, y)[0] - std::cosh(d)) / std::cosh(d));

      const HPoint t = s.point();
      const std::size_t k = s.axis();
      const double a = s.uniform(-2.0, 2.0);
      translate_iso.add(std::abs(geodesic_distance(translate_add(x, t), translate_add(y, t)) - d));
      translate_iso.add(std::abs(geodesic_distance(translate_sub(x, t), translate_sub(y, t)) - d));
      translate_iso.add(std::abs(geodesic_distance(reflect_k(k, a, x), reflect_k(k, a, y)) - d));

      const double bb = s.uniform(-2.0, 2.0);
      const HPoint p0 = s.point_on_axis_plane(k);
      compose.add(point_error(translate_add(translate_add(p0, u_k(n, k, a)), u_k(n, k, bb)),
                              translate_add(p0, u_k(n, k, a + bb))));

      const Decomposition dec = decompose_k(k, x);
      roundtrip.add(std::max(point_error(translate_add(dec.y, u_k(n, k, dec.a)), x),
                             std::abs(dec.y[k]) / dec.y[0]));

      shift.add(std::abs(pi_k(k, translate_add(x, u_k(n, k, bb))) - (pi_k(k, x) + bb)));

      // violation of |pi_k(x) - pi_k(y)| <= d, allowing rounding in the comparison
      pi_bound.add(std::max(0.0, std::abs(pi_k(k, x) - pi_k(k, y)) - d - 1e-12 * (1.0 + d)));
      const double ua = s.uniform(-3.0, 3.0), ub = s.uniform(-3.0, 3.0);
      pi_bound.add(std::abs(geodesic_distance(u_k(n, k, ua), u_k(n, k, ub)) - std::abs(ua - ub)) > 1e-10
                       ? 1.0
                       : 0.0);

      reflect.add(point_error(reflect_k(k, a, reflect_k(k, a, x)), x));
      reflect.add(point_error(reflect_k(k, a, translate_add(p0, u_k(n, k, a))), translate_add(p0, u_k(n, k, a))));

      const TangentVector lg = log_map(x, y);
      expmap.add(point_error(exp_map(x, lg), y));
      expmap.add(std::abs(tangent_norm(lg) - d));
    }
    for (const auto* acc : {&lorentz_form, &isometry, &equiv, &identity, &coord_form, &neg_hom, &cancel,
                            &cosh_d, &translate_iso, &compose, &roundtrip, &shift, &pi_bound, &reflect,
                            &expmap}) {
      out.push_back(acc->result(opt.samples));
    }
  }
  return out;
}

std::vector<CheckResult> closed_form_constants() {
  std::vector<CheckResult> out;
  const EquilibriumSolution m = mixed_equilibrium(2.0, -1.0);
  out.push_back(bound("mixed(2,-1) support radius R = 0.6227", m.radius - 0.6227, 5e-4));
  out.push_back(bound("mixed(2,-1) coefficient a1 = -1.0956", m.a1 + 1.0956, 5e-4));
  out.push_back(bound("mixed(2,-1) coefficient a0 = 2", m.a0 - 2.0, 1e-12));
  out.push_back(bound("radius_constant(2) closed form",
                      radius_constant(2) - std::acosh(1.0 + 1.0 / (2.0 * pi)), 1e-12));
  out.push_back(bound("radius_cosh(2) closed form",
                      radius_cosh(2) - std::acosh(std::cbrt(1.0 + 3.0 / (2.0 * pi))), 1e-12));
  return out;
}

std::vector<CheckResult> equilibrium_residuals(const QuadratureSpec& quad) {
  return {
      bound("integral residual rho_c (n=2)",
            integral_residual(equilibrium_constant(2), PotentialSpec::constant(2), quad), 1e-6),
      bound("integral residual rho_h (n=2)",
            integral_residual(equilibrium_cosh(2), PotentialSpec::cosh(2), quad), 1e-6),
      bound("integral residual rho_m(2,-1)",
            integral_residual(mixed_equilibrium(2.0, -1.0), PotentialSpec::mixed(2.0, -1.0), quad), 1e-5),
  };
}

std::vector<CheckResult> euler_lagrange(const PotentialSpec& spec, const QuadratureSpec& quad) {
  spec.validate();
  const EquilibriumSolution sol = equilibrium_for(spec);
  const RadialDensity rho = RadialDensity::from_equilibrium(sol);
  const EulerLagrangeReport rep = euler_lagrange_check(rho, spec, quad);
  const std::string tag = std::string(" [") + std::string(to_string(spec.attraction)) + ", n=" +
                          std::to_string(spec.dim) + "]";
  std::ostringstream lam;
  lam.precision(10);
  lam << "lambda=" << rep.lambda << " E=" << rep.energy;
  return {
      bound("Lambda relative variation on support" + tag, rep.variation, 1e-3),
      CheckResult{"Lambda nondecreasing outside support" + tag, rep.outside_min_step >= 0.0,
                  rep.outside_min_step, 0.0, "min step"},
      CheckResult{"Lambda >= lambda outside support" + tag,
                  rep.outside_gap >= -1e-3 * std::abs(rep.lambda), rep.outside_gap,
                  1e-3 * std::abs(rep.lambda), "min gap"},
      bound("lambda = 2E" + tag, rep.lambda_vs_2e, 1e-3, lam.str()),
  };
}

std::vector<CheckResult> convexity_suite(const ConvexityOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Accumulator identity("convexity identity t K1 + (1-t) K2 - K(mix) = t(1-t)|c1-c2|^2", 1e-10);
  Accumulator nonneg("convexity gap nonnegative", 0.0);

  const std::size_t nodes = 401;
  for (std::size_t it = 0; it < opt.pairs; ++it) {
    const std::size_t dim = 2 + it % 3;
    const double radius = 0.5 + 1.5 * unif(rng);
    std::vector<double> x(nodes);
    for (std::size_t i = 0; i < nodes; ++i) x[i] = radius * static_cast<double>(i) / (nodes - 1.0);
    auto random_profile = [&] {
      // positive combination of exponentials and a bump
      const double c0 = 0.1 + unif(rng), c1 = 3.0 * unif(rng), c2 = unif(rng), mu = radius * unif(rng);
      const double k = 4.0 * unif(rng) - 2.0;
      std::vector<double> v(nodes);
      for (std::size_t i = 0; i < nodes; ++i) {
        v[i] = c0 + c1 * std::exp(k * x[i]) + c2 * std::exp(-8.0 * (x[i] - mu) * (x[i] - mu));
      }
      return RadialDensity::normalized(dim, x, std::move(v));
    };
    const RadialDensity r1 = random_profile();
    const RadialDensity r2 = random_profile();
    const double t = 0.05 + 0.9 * unif(rng);
    const double gap = convexity_gap(r1, r2, t);
    const Vector dc = moment_vector(r1) - moment_vector(r2);
    const double expected = t * (1.0 - t) * lorentz(dc, dc);
    identity.add(std::abs(gap - expected) / std::max(1.0, kappa(r1)));
    nonneg.add(std::max(0.0, -gap - 1e-12));
  }

  Accumulator centering("K invariant under center()", 1e-10);
  Accumulator moments("center() removes spatial moments", 1e-10);
  for (std::size_t it = 0; it < opt.ensembles; ++it) {
    const std::size_t dim = 2 + it % 3;
    Sampler s{std::mt19937_64(opt.seed * 1000 + it), dim, 2.0, 0.9};
    const std::size_t m = 5 + it % 20;
    std::vector<HPoint> pts;
    std::vector<double> mass;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      // offset cluster so the moment vector is far from the vertex
      pts.push_back(translate_add(s.point(), u_k(dim, 1, 1.5)));
      mass.push_back(0.1 + s.uniform(0.0, 1.0));
      total += mass.back();
    }
    for (auto& w : mass) w /= total;
    ParticleEnsemble ens{std::move(pts), std::move(mass)};
    // renormalize to the 1e-12 sum tolerance
    double sum = 0.0;
    for (double w : ens.masses) sum += w;
    for (auto& w : ens.masses) w /= sum;
    const double k0 = kappa(ens);
    const ParticleEnsemble c = center(ens);
    centering.add(std::abs(kappa(c) - k0) / k0);
    const Vector mv = moment_vector(c);
    moments.add(mv.tail(mv.size() - 1).cwiseAbs().maxCoeff() / mv[0]);
  }

  return {identity.result(opt.pairs), nonneg.result(opt.pairs), centering.result(opt.ensembles),
          moments.result(opt.ensembles)};
}

}  // namespace hypagg::verify
