#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypagg/hyperboloid.hpp"
#include "support.hpp"

#include <cmath>
#include <stdexcept>

using namespace hypagg;
using testsupport::point_error;
using testsupport::Rng;

namespace {

constexpr std::size_t kSamples = 10000;
const std::size_t kDims[] = {2, 3, 5};

// x +' y written out coordinate by coordinate.
Vector plus_oracle(const Vector& x, const Vector& y) {
  const auto n = x.size() - 1;
  double xy = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) xy += x[i] * y[i];
  Vector out(n + 1);
  out[0] = x[0] * y[0] + xy;
  for (Eigen::Index j = 1; j <= n; ++j) out[j] = x[0] * y[j] + x[j] + y[j] / (y[0] + 1.0) * xy;
  return out;
}

// B(w) assembled entry by entry with (gamma - 1) w_i w_j / |w|^2.
Matrix boost_oracle(const Vector& w) {
  const auto n = w.size();
  const double g = 1.0 / std::sqrt(1.0 - w.squaredNorm());
  Matrix b = Matrix::Zero(n + 1, n + 1);
  b(0, 0) = g;
  for (Eigen::Index i = 0; i < n; ++i) {
    b(0, i + 1) = -g * w[i];
    b(i + 1, 0) = -g * w[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (g - 1.0) * w[i] * w[j] / w.squaredNorm();
    }
  }
  return b;
}

Matrix eta(std::size_t n) {
  Matrix e = -Matrix::Identity(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  e(0, 0) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("HPoint construction validates and re-projects") {
  Vector on(3);
  on << std::cosh(0.4), std::sinh(0.4), 0.0;
  CHECK(HPoint(on)[0] == doctest::Approx(std::cosh(0.4)).epsilon(1e-15));

  Vector off(3);
  off << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(HPoint{off}, std::invalid_argument);
  Vector lower(3);
  lower << -1.0, 0.0, 0.0;
  CHECK_THROWS_AS(HPoint{lower}, std::invalid_argument);
  CHECK_THROWS_AS(HPoint{Vector::Zero(1)}, std::invalid_argument);

  // drift below 1e-10 is accepted and removed
  Vector nudged = on;
  nudged[0] += 1e-12;
  CHECK(testsupport::sheet_defect(HPoint(nudged).coords()) < 1e-15);
}

TEST_CASE("polar coordinates round trip") {
  Rng rng(1);
  for (std::size_t n : kDims) {
    for (int i = 0; i < 1000; ++i) {
      const HPoint x = rng.point(n);
      const PolarCoord p = to_polar(x);
      CHECK(std::abs(p.xi.norm() - 1.0) < 1e-12);
      CHECK(point_error(from_polar(p), x) < 1e-12);
    }
  }
  CHECK_THROWS_AS(from_polar({-0.1, Vector::Unit(2, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(from_polar({0.1, Vector::Constant(2, 1.0)}), std::invalid_argument);
}

TEST_CASE("minkowski_inner") {
  const HPoint v = HPoint::vertex(2);
  CHECK(minkowski_inner(v, v) == 1.0);
  CHECK(minkowski_inner(v, u_k(2, 1, 0.8)) == doctest::Approx(std::cosh(0.8)).epsilon(1e-15));
  CHECK_THROWS_AS(minkowski_inner(v, HPoint::vertex(3)), std::invalid_argument);

  Rng rng(2);
  double worst = 2.0;
  for (std::size_t i = 0; i < kSamples; ++i) worst = std::min(worst, minkowski_inner(rng.point(2), rng.point(2)));
  CHECK(worst >= 1.0 - 1e-12);
}

TEST_CASE("geodesic_distance") {
  const HPoint v = HPoint::vertex(3);
  CHECK(geodesic_distance(v, v) == 0.0);
  for (double a : {-2.5, -0.3, 1e-7, 0.9, 4.0}) {
    CHECK(geodesic_distance(v, u_k(3, 2, a)) == doctest::Approx(std::abs(a)).epsilon(1e-13));
  }

  SUBCASE("nearby points keep relative accuracy") {
    const HPoint x = u_k(2, 1, 3.0);
    const HPoint y = translate_add(u_k(2, 2, 1e-9), x);
    CHECK(geodesic_distance(x, y) == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK(arccosh1p(1e-12) == doctest::Approx(std::sqrt(2e-12)).epsilon(1e-6));
    CHECK(arccosh1p(0.5) == doctest::Approx(std::acosh(1.5)).epsilon(1e-15));
  }

  SUBCASE("symmetry and triangle inequality") {
    Rng rng(3);
    for (std::size_t n : kDims) {
      for (std::size_t i = 0; i < kSamples; ++i) {
        const HPoint x = rng.point(n), y = rng.point(n), z = rng.point(n);
        const double dxy = geodesic_distance(x, y);
        REQUIRE(dxy == doctest::Approx(geodesic_distance(y, x)).epsilon(1e-12));
        REQUIRE(geodesic_distance(x, z) <= dxy + geodesic_distance(y, z) + 1e-12);
      }
    }
  }
}

TEST_CASE("boost_matrix") {
  CHECK(boost_matrix(BoostParam(Vector::Zero(3))) == Matrix::Identity(4, 4));
  CHECK(boost_matrix(BoostParam(Vector::Constant(3, 1e-15))) == Matrix::Identity(4, 4));
  CHECK_THROWS_AS(BoostParam(Vector::Unit(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(BoostParam(Vector::Constant(2, 0.8)), std::invalid_argument);

  Rng rng(4);
  for (std::size_t n : kDims) {
    for (int i = 0; i < 2000; ++i) {
      const Vector w = rng.boost(n, 0.99);
      if (w.norm() < 1e-3) continue;
      const BoostParam bp(w);
      const Matrix b = boost_matrix(bp);
      const double scale = bp.gamma() * bp.gamma();
      REQUIRE(testsupport::max_abs_diff(b.reshaped(), boost_oracle(w).reshaped()) < 1e-12 * scale);
      REQUIRE((b.transpose() * eta(n) * b - eta(n)).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
  }
}

TEST_CASE("apply_isometry") {
  Rng rng(5);
  for (std::size_t n : kDims) {
    const HPoint v = HPoint::vertex(n);
    for (std::size_t i = 0; i < kSamples; ++i) {
      const HPoint x = rng.point(n), y = rng.point(n);
      const BoostParam w(rng.boost(n));
      REQUIRE(point_error(apply_isometry(BoostParam(Vector::Zero(static_cast<Eigen::Index>(n))), x), x) == 0.0);
      REQUIRE(point_error(apply_isometry(BoostParam::toward_vertex(x), x), v) < 1e-12);
      const HPoint fx = apply_isometry(w, x);
      REQUIRE(point_error(fx, lift(boost_matrix(w) * x.coords())) < 1e-12);
      REQUIRE(std::abs(geodesic_distance(fx, apply_isometry(w, y)) - geodesic_distance(x, y)) < 1e-11);
    }
  }
}

TEST_CASE("translate_add matches its coordinate form and definition") {
  Rng rng(6);
  for (std::size_t n : kDims) {
    const HPoint v = HPoint::vertex(n);
    for (std::size_t i = 0; i < kSamples; ++i) {
      const HPoint x = rng.point(n), y = rng.point(n);
      const HPoint s = translate_add(x, y);
      REQUIRE(testsupport::max_abs_diff(s.coords(), plus_oracle(x.coords(), y.coords())) <
              1e-12 * std::max(1.0, s[0]));
      // x +' y = F_{-y_hat}(x)
      REQUIRE(point_error(s, lift(boost_oracle(-y.spatial() / y[0]) * x.coords())) < 1e-10);
      REQUIRE(point_error(translate_add(x, v), x) < 1e-14);
      REQUIRE(point_error(translate_add(v, x), x) < 1e-14);
      REQUIRE(point_error(translate_add(x, neg(x)), v) < 1e-12);
    }
  }
}

TEST_CASE("+' is neither commutative nor associative") {
  const HPoint x = u_k(2, 1, 1.0), y = u_k(2, 2, 1.0);
  const HPoint xy = translate_add(x, y), yx = translate_add(y, x);
  CHECK(xy[0] == doctest::Approx(yx[0]));
  CHECK(std::abs(xy[1] - yx[1]) > 0.1);

  // stored counterexample triple
  const HPoint a = u_k(2, 1, 1.0), b = u_k(2, 2, 1.0), c = u_k(2, 1, -0.5);
  const double left = translate_add(translate_add(a, b), c)[0];
  const double right = translate_add(a, translate_add(b, c))[0];
  CHECK(std::abs(left - right) > 1e-3);
}

TEST_CASE("neg and translate_sub") {
  CHECK(point_error(neg(HPoint::vertex(4)), HPoint::vertex(4)) == 0.0);
  Rng rng(7);
  for (std::size_t n : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const HPoint x = rng.point(n), y = rng.point(n);
      const double d = geodesic_distance(x, y);
      REQUIRE(translate_sub(x, y)[0] == doctest::Approx(std::cosh(d)).epsilon(1e-12));
      REQUIRE(point_error(translate_sub(translate_add(x, y), y), x) < 1e-10);
      REQUIRE(point_error(neg(translate_add(x, y)), translate_add(neg(x), neg(y))) < 1e-12);
    }
  }
}

TEST_CASE("u_k and pi_k") {
  const std::size_t n = 3;
  CHECK(pi_k(2, HPoint::vertex(n)) == 0.0);
  CHECK_THROWS_AS(u_k(n, 0, 1.0), std::out_of_range);
  CHECK_THROWS_AS(u_k(n, 4, 1.0), std::out_of_range);
  CHECK_THROWS_AS(pi_k(4, HPoint::vertex(n)), std::out_of_range);

  Rng rng(8);
  for (std::size_t dim : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const std::size_t k = 1 + i % dim;
      const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
      REQUIRE(pi_k(k, u_k(dim, k, a)) == doctest::Approx(a).epsilon(1e-12));
      REQUIRE(point_error(translate_add(u_k(dim, k, a), u_k(dim, k, b)), u_k(dim, k, a + b)) < 1e-12);
      const HPoint x = rng.point(dim), y = rng.point(dim);
      REQUIRE(std::abs(pi_k(k, translate_add(x, u_k(dim, k, b))) - (pi_k(k, x) + b)) < 1e-10);
      REQUIRE(std::abs(pi_k(k, x) - pi_k(k, y)) <= geodesic_distance(x, y) + 1e-12);
      // equality along the k-axis flow
      REQUIRE(geodesic_distance(u_k(dim, k, a), u_k(dim, k, b)) ==
              doctest::Approx(std::abs(pi_k(k, u_k(dim, k, a)) - pi_k(k, u_k(dim, k, b)))).epsilon(1e-10));
    }
  }
}

TEST_CASE("composition of u_k translations on P_k(0)") {
  Rng rng(9);
  for (std::size_t n : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const std::size_t k = 1 + i % n;
      Vector c = rng.point(n).coords();
      c[static_cast<Eigen::Index>(k)] = 0.0;
      const HPoint x = lift(c);
      const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
      REQUIRE(point_error(translate_add(translate_add(x, u_k(n, k, a)), u_k(n, k, b)),
                          translate_add(x, u_k(n, k, a + b))) < 1e-10);
    }
  }
}

TEST_CASE("decompose_k") {
  const HPoint v = HPoint::vertex(3);
  const Decomposition dv = decompose_k(1, v);
  CHECK(dv.a == 0.0);
  CHECK(point_error(dv.y, v) == 0.0);
  const Decomposition du = decompose_k(2, u_k(3, 2, 0.75));
  CHECK(du.a == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(point_error(du.y, v) < 1e-14);

  Rng rng(10);
  for (std::size_t n : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const std::size_t k = 1 + i % n;
      const HPoint x = rng.point(n);
      const Decomposition d = decompose_k(k, x);
      REQUIRE(d.y[k] == 0.0);
      REQUIRE(d.a == doctest::Approx(std::atanh(x[k] / x[0])).epsilon(1e-14));
      REQUIRE(point_error(translate_add(d.y, u_k(n, k, d.a)), x) < 1e-11);
    }
  }
}

TEST_CASE("reflect_k") {
  CHECK(point_error(reflect_k(1, 0.0, HPoint::vertex(2)), HPoint::vertex(2)) == 0.0);
  Rng rng(11);
  for (std::size_t n : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const std::size_t k = 1 + i % n;
      const double a = rng.uniform(-2, 2);
      const HPoint x = rng.point(n), y = rng.point(n);
      const HPoint r = reflect_k(k, a, x);
      REQUIRE(point_error(reflect_k(k, a, r), x) < 1e-10);
      REQUIRE(std::abs(geodesic_distance(r, reflect_k(k, a, y)) - geodesic_distance(x, y)) < 1e-11);
      // x^a = R_k(x -' u_k(a)) +' u_k(a), with R_k flipping coordinate k
      Vector flipped = translate_sub(x, u_k(n, k, a)).coords();
      flipped[static_cast<Eigen::Index>(k)] *= -1.0;
      REQUIRE(point_error(translate_add(lift(flipped), u_k(n, k, a)), r) < 1e-10);
      // fixed set: pi_k(x) = a
      Vector c = rng.point(n).coords();
      c[static_cast<Eigen::Index>(k)] = 0.0;
      const HPoint on = translate_add(lift(c), u_k(n, k, a));
      REQUIRE(point_error(reflect_k(k, a, on), on) < 1e-10);
    }
  }
}

TEST_CASE("exp_map and log_map") {
  const HPoint v = HPoint::vertex(3);
  CHECK(tangent_norm(log_map(v, v)) == 0.0);
  Vector t = Vector::Zero(4);
  t[1] = 1.3;
  CHECK(point_error(exp_map(v, t), u_k(3, 1, 1.3)) < 1e-14);
  CHECK_THROWS_AS(exp_map(v, Vector::Unit(4, 0)), std::invalid_argument);

  Rng rng(12);
  for (std::size_t n : kDims) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const HPoint x = rng.point(n), y = rng.point(n);
      const TangentVector lg = log_map(x, y);
      REQUIRE(std::abs(lorentz(x.coords(), lg)) < 1e-10 * std::max(1.0, x[0] * lg.norm()));
      REQUIRE(tangent_norm(lg) == doctest::Approx(geodesic_distance(x, y)).epsilon(1e-10));
      REQUIRE(point_error(exp_map(x, lg), y) < 1e-10);
    }
  }
}

TEST_CASE("long compositions stay on the sheet") {
  Rng rng(13);
  HPoint x = rng.point(3);
  for (int i = 0; i < 10000; ++i) {
    x = translate_add(x, rng.point(3, 0.5));
    x = apply_isometry(BoostParam(rng.boost(3, 0.3)), x);
    if (x[0] > 1e6) x = HPoint::from_spatial(x.spatial() / x[0]);
  }
  CHECK(testsupport::sheet_defect(x.coords()) < 1e-14);
}
