#include "hypagg/hyperboloid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypagg {

namespace {

constexpr double kOnSheetTol = 1e-10;
constexpr double kTangentTol = 1e-10;

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

void require_axis(std::size_t k, std::size_t dim) {
  if (k < 1 || k > dim) {
    throw std::out_of_range("axis index " + std::to_string(k) + " outside 1.." +
                            std::to_string(dim));
  }
}

}  // namespace

HPoint::HPoint(Vector coords, Trusted) : coords_(std::move(coords)) {
  coords_[0] = std::sqrt(1.0 + coords_.tail(coords_.size() - 1).squaredNorm());
}

HPoint::HPoint(Vector coords) {
  if (coords.size() < 2) {
    throw std::invalid_argument("HPoint needs at least 2 coordinates");
  }
  if (!coords.allFinite()) {
    throw std::invalid_argument("HPoint coordinates must be finite");
  }
  if (!(coords[0] > 0.0)) {
    throw std::invalid_argument("HPoint must lie on the upper sheet (x0 > 0)");
  }
  const double spatial2 = coords.tail(coords.size() - 1).squaredNorm();
  const double defect = coords[0] * coords[0] - spatial2 - 1.0;
  if (std::abs(defect) > kOnSheetTol * (1.0 + coords[0] * coords[0])) {
    throw std::invalid_argument("point is not on the hyperboloid (defect " +
                                std::to_string(defect) + ")");
  }
  coords_ = std::move(coords);
  coords_[0] = std::sqrt(1.0 + spatial2);
}

HPoint HPoint::vertex(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Vector c = Vector::Zero(static_cast<Eigen::Index>(dim + 1));
  c[0] = 1.0;
  return HPoint(std::move(c), Trusted{});
}

HPoint HPoint::from_spatial(const Eigen::Ref<const Vector>& spatial) {
  if (spatial.size() < 1) throw std::invalid_argument("dimension must be positive");
  Vector c(spatial.size() + 1);
  c[0] = 0.0;
  c.tail(spatial.size()) = spatial;
  return HPoint(std::move(c), Trusted{});
}

HPoint lift(Vector ambient) {
  if (ambient.size() < 2 || !ambient.allFinite()) {
    throw std::invalid_argument("cannot lift a non-finite or too-short vector");
  }
  return HPoint(std::move(ambient), HPoint::Trusted{});
}

BoostParam::BoostParam(Vector w) : w_(std::move(w)) {
  const double n2 = w_.squaredNorm();
  if (!(n2 < 1.0)) throw std::invalid_argument("boost parameter must satisfy |w| < 1");
  gamma_ = 1.0 / std::sqrt(1.0 - n2);
}

BoostParam BoostParam::toward_vertex(const HPoint& x) {
  BoostParam b(x.spatial() / x[0]);
  // 1 - |x_hat|^2 = 1 / x0^2 exactly on the sheet; avoid the cancellation.
  b.gamma_ = x[0];
  return b;
}

HPoint from_polar(const PolarCoord& p) {
  if (p.theta < 0.0) throw std::invalid_argument("polar radius must be nonnegative");
  const double xi_norm = p.xi.norm();
  if (std::abs(xi_norm - 1.0) > 1e-12) throw std::invalid_argument("xi must be a unit vector");
  return HPoint::from_spatial(std::sinh(p.theta) * p.xi);
}

PolarCoord to_polar(const HPoint& x) {
  PolarCoord p;
  const double r = x.spatial().norm();
  p.theta = std::asinh(r);
  p.xi = Vector::Zero(static_cast<Eigen::Index>(x.dim()));
  if (r > 0.0) {
    p.xi = x.spatial() / r;
  } else {
    p.xi[0] = 1.0;
  }
  return p;
}

double lorentz(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  require_same_dim(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size()));
  const auto m = a.size() - 1;
  return a[0] * b[0] - a.tail(m).dot(b.tail(m));
}

double minkowski_inner(const HPoint& x, const HPoint& y) {
  require_same_dim(x.dim(), y.dim());
  return lorentz(x.coords(), y.coords());
}

double arccosh1p(double s) {
  if (s < 1e-4) return std::log1p(s + std::sqrt(2.0 * s + s * s));
  return std::acosh(1.0 + s);
}

double geodesic_distance(const HPoint& x, const HPoint& y) {
  const double inner = minkowski_inner(x, y);
  if (inner < 1.0 - 1e-9 * x[0] * y[0]) {
    throw std::domain_error("Lorentzian inner product below 1: invalid hyperboloid points");
  }
  double s = inner - 1.0;
  if (s < 1.0) {
    // -<x-y, x-y> = 2(<x,y> - 1); the difference form keeps digits for nearby points.
    const Vector ds = x.spatial() - y.spatial();
    const double d0 = ds.dot(x.spatial() + y.spatial()) / (x[0] + y[0]);
    s = 0.5 * (ds.squaredNorm() - d0 * d0);
  }
  if (s <= 0.0) return 0.0;
  return arccosh1p(s);
}

Matrix boost_matrix(const BoostParam& bp) {
  const auto n = static_cast<Eigen::Index>(bp.dim());
  Matrix b = Matrix::Identity(n + 1, n + 1);
  const Vector& w = bp.w();
  if (w.norm() < 1e-14) return b;
  const double g = bp.gamma();
  b(0, 0) = g;
  b.block(1, 0, n, 1) = -g * w;
  b.block(0, 1, 1, n) = -g * w.transpose();
  // (gamma - 1)/|w|^2 == gamma^2/(gamma + 1)
  b.block(1, 1, n, n) += (g * g / (g + 1.0)) * (w * w.transpose());
  return b;
}

HPoint apply_isometry(const BoostParam& bp, const HPoint& x) {
  require_same_dim(bp.dim(), x.dim());
  const Vector& w = bp.w();
  const double g = bp.gamma();
  const double wx = w.dot(x.spatial());
  Vector out(x.coords().size());
  out[0] = g * (x[0] - wx);
  out.tail(w.size()) = x.spatial() + ((g * g / (g + 1.0)) * wx - g * x[0]) * w;
  return lift(std::move(out));
}

HPoint translate_add(const HPoint& x, const HPoint& y) {
  require_same_dim(x.dim(), y.dim());
  const double xy = x.spatial().dot(y.spatial());
  Vector out(x.coords().size());
  out[0] = x[0] * y[0] + xy;
  out.tail(x.dim()) = x[0] * y.spatial() + x.spatial() + (xy / (y[0] + 1.0)) * y.spatial();
  return lift(std::move(out));
}

HPoint neg(const HPoint& x) {
  Vector c = x.coords();
  c.tail(x.dim()) *= -1.0;
  return lift(std::move(c));
}

HPoint translate_sub(const HPoint& x, const HPoint& y) { return translate_add(x, neg(y)); }

HPoint u_k(std::size_t dim, std::size_t k, double a) {
  require_axis(k, dim);
  Vector c = Vector::Zero(static_cast<Eigen::Index>(dim + 1));
  c[static_cast<Eigen::Index>(k)] = std::sinh(a);
  return lift(std::move(c));
}

double pi_k(std::size_t k, const HPoint& x) {
  require_axis(k, x.dim());
  return std::atanh(x[k] / x[0]);
}

Decomposition decompose_k(std::size_t k, const HPoint& x) {
  const double a = pi_k(k, x);
  Vector y = translate_sub(x, u_k(x.dim(), k, a)).coords();
  y[static_cast<Eigen::Index>(k)] = 0.0;
  return {a, lift(std::move(y))};
}

HPoint reflect_k(std::size_t k, double a, const HPoint& x) {
  require_axis(k, x.dim());
  const double c2 = std::cosh(2.0 * a);
  const double s2 = std::sinh(2.0 * a);
  Vector out = x.coords();
  const auto kk = static_cast<Eigen::Index>(k);
  out[0] = x[0] * c2 - x[k] * s2;
  out[kk] = -x[k] * c2 + x[0] * s2;
  return lift(std::move(out));
}

TangentVector project_tangent(const HPoint& x, const Eigen::Ref<const Vector>& t) {
  require_same_dim(x.dim() + 1, static_cast<std::size_t>(t.size()));
  return t - lorentz(x.coords(), t) * x.coords();
}

double tangent_norm(const Eigen::Ref<const Vector>& t) {
  return std::sqrt(std::max(0.0, -lorentz(t, t)));
}

HPoint exp_map(const HPoint& x, const Eigen::Ref<const Vector>& t) {
  require_same_dim(x.dim() + 1, static_cast<std::size_t>(t.size()));
  const double scale = std::max(1.0, x.coords().norm() * t.norm());
  if (std::abs(lorentz(x.coords(), t)) > kTangentTol * scale) {
    throw std::invalid_argument("exp_map: vector is not tangent at the base point");
  }
  const TangentVector tt = project_tangent(x, t);
  const double len = tangent_norm(tt);
  if (len < 1e-300) return x;
  const double sinc = len < 1e-8 ? 1.0 + len * len / 6.0 : std::sinh(len) / len;
  return lift(std::cosh(len) * x.coords() + sinc * tt);
}

TangentVector log_map(const HPoint& x, const HPoint& y) {
  const double d = geodesic_distance(x, y);
  const Vector u = y.coords() - minkowski_inner(x, y) * x.coords();
  if (d == 0.0) return TangentVector::Zero(u.size());
  const double factor = d < 1e-8 ? 1.0 - d * d / 6.0 : d / std::sinh(d);
  return project_tangent(x, factor * u);
}

}  // namespace hypagg
