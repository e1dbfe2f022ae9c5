#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>

// Hyperboloid model of H^n: points x in R^{n+1} with x0^2 - x1^2 - ... - xn^2 = 1, x0 > 0.
// Coordinates are indexed 0..n; the "axis" arguments below are 1-based (1..n).

namespace hypagg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Ambient vector tangent to the hyperboloid at some base point.
using TangentVector = Eigen::VectorXd;

/// A point on H^n stored by its n+1 ambient coordinates.
///
/// The time-like coordinate is always recomputed as sqrt(1 + |spatial|^2), so
/// every HPoint satisfies the hyperboloid constraint to rounding.
class HPoint {
 public:
  /// Accepts coordinates within 1e-10 (relative) of the hyperboloid and re-projects.
  /// Throws std::invalid_argument otherwise.
  explicit HPoint(Vector coords);

  /// The vertex v = (1, 0, ..., 0) of H^n.
  static HPoint vertex(std::size_t dim);
  /// Lifts spatial coordinates (x1..xn) onto the upper sheet.
  static HPoint from_spatial(const Eigen::Ref<const Vector>& spatial);

  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()) - 1; }
  const Vector& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }
  auto spatial() const { return coords_.tail(coords_.size() - 1); }

 private:
  struct Trusted {};
  HPoint(Vector coords, Trusted);
  friend HPoint lift(Vector spatial_and_time);

  Vector coords_;
};

/// Re-projects an ambient vector onto H^n by recomputing x0 from the spatial part.
HPoint lift(Vector ambient);

/// Boost velocity w in R^n with |w| < 1.
class BoostParam {
 public:
  explicit BoostParam(Vector w);
  /// w = x_hat = (x1/x0, ..., xn/x0); F_{x_hat} maps x to the vertex.
  static BoostParam toward_vertex(const HPoint& x);

  const Vector& w() const { return w_; }
  std::size_t dim() const { return static_cast<std::size_t>(w_.size()); }
  /// Lorentz factor (1 - |w|^2)^{-1/2}.
  double gamma() const { return gamma_; }

 private:
  Vector w_;
  double gamma_;
};

/// Hyperbolic polar coordinates (theta, xi) -> (cosh theta, sinh theta xi).
struct PolarCoord {
  double theta = 0.0;
  Vector xi;
};

HPoint from_polar(const PolarCoord& p);
PolarCoord to_polar(const HPoint& x);

/// Lorentzian form <a, b> = a0 b0 - a1 b1 - ... - an bn on raw ambient vectors.
double lorentz(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

double minkowski_inner(const HPoint& x, const HPoint& y);

/// d(x, y) = arccosh <x, y>, evaluated without cancellation for nearby points.
double geodesic_distance(const HPoint& x, const HPoint& y);

/// arccosh(1 + s) for s >= 0, accurate for small s.
double arccosh1p(double s);

Matrix boost_matrix(const BoostParam& w);
/// F_w(x) = B(w) x.
HPoint apply_isometry(const BoostParam& w, const HPoint& x);

/// x +' y = F_{-y_hat}(x).
HPoint translate_add(const HPoint& x, const HPoint& y);
/// Flips the sign of the spatial coordinates.
HPoint neg(const HPoint& x);
/// x -' y = x +' (-y).
HPoint translate_sub(const HPoint& x, const HPoint& y);

/// u_k(a): cosh a at index 0, sinh a at index k.
HPoint u_k(std::size_t dim, std::size_t k, double a);
/// pi_k(x) = artanh(x_k / x0).
double pi_k(std::size_t k, const HPoint& x);

struct Decomposition {
  double a;  // coordinate along axis k
  HPoint y;  // foot point with y_k = 0
};
/// Unique (a, y) with x = y +' u_k(a) and y_k = 0.
Decomposition decompose_k(std::size_t k, const HPoint& x);

/// Reflection across the hypersurface P_k(a) = {pi_k = a}.
HPoint reflect_k(std::size_t k, double a, const HPoint& x);

/// Removes the component of t along x so that <x, t> = 0.
TangentVector project_tangent(const HPoint& x, const Eigen::Ref<const Vector>& t);
/// Riemannian norm of a tangent vector, sqrt(-<t, t>).
double tangent_norm(const Eigen::Ref<const Vector>& t);

/// exp_x(t) = cosh|t| x + sinh|t| t/|t|. Throws if t is not tangent at x.
HPoint exp_map(const HPoint& x, const Eigen::Ref<const Vector>& t);
/// Inverse of exp_map: the tangent vector at x of length d(x, y) pointing to y.
TangentVector log_map(const HPoint& x, const HPoint& y);

}  // namespace hypagg
