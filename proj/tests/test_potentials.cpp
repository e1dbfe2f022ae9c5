#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypagg/potentials.hpp"
#include "support.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace hypagg;
using std::numbers::pi;

namespace {

// Frozen 40-digit references for Phi_n(1).
constexpr double kPhi2At1 = 0.122857562711581692368;
constexpr double kPhi3At1 = 0.024910556524700641418;
constexpr double kPhi4At1 = 0.008747784625132785163;

double phi_oracle(double theta, std::size_t n) {
  boost::math::quadrature::exp_sinh<double> q;
  const double p = 1.0 - static_cast<double>(n);
  return q.integrate([p](double s) { return std::pow(std::sinh(s), p); }, theta,
                     std::numeric_limits<double>::infinity()) /
         (2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n));
}

// A_c(theta) = int_0^theta (int_0^s sinh^{n-1}) / sinh^{n-1}(s) ds, by nested quadrature.
double constant_oracle(double theta, std::size_t n) {
  boost::math::quadrature::tanh_sinh<double> q;
  const double p = static_cast<double>(n - 1);
  auto prime = [&](double s) {
    if (s < 1e-6) return s / static_cast<double>(n);
    return q.integrate([p](double u) { return std::pow(std::sinh(u), p); }, 0.0, s) / std::pow(std::sinh(s), p);
  };
  return q.integrate(prime, 0.0, theta);
}

std::vector<PotentialSpec> all_families() {
  return {PotentialSpec::constant(2), PotentialSpec::constant(3), PotentialSpec::constant(4),
          PotentialSpec::cosh(2),     PotentialSpec::cosh(3),     PotentialSpec::mixed(2.0, -1.0),
          PotentialSpec::mixed(0.5, 1.5, 3), PotentialSpec::nonmonotone()};
}

}  // namespace

TEST_CASE("unit ball volume and sphere area") {
  CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-15));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-15));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
}

TEST_CASE("sinh_power_integral") {
  CHECK(sinh_power_integral(2, 0.0) == 0.0);
  for (double t : {0.01, 0.5, 1.0, 3.0}) {
    CHECK(sinh_power_integral(0, t) == doctest::Approx(t));
    CHECK(sinh_power_integral(1, t) == doctest::Approx(std::cosh(t) - 1.0).epsilon(1e-14));
    CHECK(sinh_power_integral(2, t) == doctest::Approx(0.5 * (std::sinh(t) * std::cosh(t) - t)).epsilon(1e-12));
  }
}

TEST_CASE("green_phi closed forms and references") {
  CHECK(green_phi(1.0, 2) == doctest::Approx(kPhi2At1).epsilon(1e-14));
  CHECK(green_phi(1.0, 3) == doctest::Approx(kPhi3At1).epsilon(1e-14));
  CHECK(green_phi(1.0, 4) == doctest::Approx(kPhi4At1).epsilon(1e-10));
  for (double t : {1e-6, 0.05, 0.7, 2.0, 8.0, 30.0}) {
    CHECK(green_phi(t, 2) == doctest::Approx(-std::log(std::tanh(0.5 * t)) / (2.0 * pi)).epsilon(1e-12));
    CHECK(green_phi(t, 3) == doctest::Approx((1.0 / std::tanh(t) - 1.0) / (4.0 * pi)).epsilon(1e-9));
  }
  for (std::size_t n : {3u, 4u, 5u}) {
    for (double t : {0.2, 1.0, 3.0}) {
      CHECK(green_phi(t, n) == doctest::Approx(phi_oracle(t, n)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(green_phi(0.0, 2), std::domain_error);
  CHECK_THROWS_AS(green_phi(-1.0, 3), std::domain_error);
  CHECK_THROWS_AS(green_phi_prime(0.0, 2), std::domain_error);
}

TEST_CASE("green_phi_prime times the flux area is -1") {
  testsupport::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    const double t = rng.uniform(0.01, 6.0);
    const double area = sphere_area(n) * std::pow(std::sinh(t), static_cast<double>(n - 1));
    REQUIRE(green_phi_prime(t, n) * -area == doctest::Approx(1.0).epsilon(1e-13));
  }
  // matches a difference quotient of Phi
  for (std::size_t n : {2u, 3u, 4u}) {
    const double h = 1e-5;
    const double fd = (green_phi(1.2 + h, n) - green_phi(1.2 - h, n)) / (2 * h);
    CHECK(green_phi_prime(1.2, n) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("green_phi is positive and strictly decreasing") {
  for (std::size_t n : {2u, 3u}) {
    double prev = green_phi(1e-4, n);
    for (double t = 0.01; t < 15.0; t += 0.01) {
      const double v = green_phi(t, n);
      REQUIRE(v > 0.0);
      REQUIRE(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("constant-Laplacian attraction") {
  const auto s2 = PotentialSpec::constant(2);
  CHECK(attraction_value(s2, 0.0) == 0.0);
  CHECK(attraction_prime(s2, 0.0) == 0.0);
  for (double t : {0.1, 0.9, 2.5, 5.0}) {
    CHECK(attraction_value(s2, t) == doctest::Approx(2.0 * std::log(std::cosh(0.5 * t))).epsilon(1e-13));
    CHECK(attraction_prime(s2, t) == doctest::Approx(std::tanh(0.5 * t)).epsilon(1e-13));
    CHECK(std::abs(attraction_value(s2, t) - constant_oracle(t, 2)) < 1e-10);
  }
  const auto s3 = PotentialSpec::constant(3);
  for (double t : {0.3, 1.0, 2.0}) {
    const double i2 = 0.5 * (std::sinh(t) * std::cosh(t) - t);
    CHECK(attraction_prime(s3, t) == doctest::Approx(i2 / std::pow(std::sinh(t), 2)).epsilon(1e-12));
    CHECK(attraction_value(s3, t) == doctest::Approx(0.5 * (t / std::tanh(t) - 1.0)).epsilon(1e-13));
    CHECK(std::abs(attraction_value(s3, t) - constant_oracle(t, 3)) < 1e-10);
  }
  CHECK(std::abs(attraction_value(PotentialSpec::constant(4), 1.5) - constant_oracle(1.5, 4)) < 1e-10);
  // continuity at 0
  for (std::size_t n : {2u, 3u, 5u}) {
    const auto s = PotentialSpec::constant(n);
    CHECK(attraction_value(s, 1e-8) < 1e-15);
    CHECK(attraction_prime(s, 1e-8) == doctest::Approx(1e-8 / static_cast<double>(n)).epsilon(1e-6));
  }
}

TEST_CASE("hyperbolic-cosine attraction") {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto s = PotentialSpec::cosh(n);
    CHECK(attraction_value(s, 0.0) == 0.0);
    for (double t : {0.2, 1.0, 4.0}) {
      CHECK(attraction_value(s, t) == doctest::Approx((std::cosh(t) - 1.0) / n).epsilon(1e-14));
      CHECK(attraction_prime(s, t) == doctest::Approx(std::sinh(t) / n).epsilon(1e-14));
    }
  }
}

TEST_CASE("mixed and non-monotone attraction") {
  const auto m = PotentialSpec::mixed(2.0, -1.0);
  for (double t : {0.3, 2.0}) {
    CHECK(attraction_value(m, t) ==
          doctest::Approx(2.0 * attraction_value(PotentialSpec::constant(), t) -
                          attraction_value(PotentialSpec::cosh(), t)));
  }
  const auto nm = PotentialSpec::nonmonotone();
  for (double t : {0.1, 1.0, 3.0}) {
    const double s = std::sinh(t), c = std::cosh(t);
    CHECK(attraction_value(nm, t) ==
          doctest::Approx(s * s / 6.0 - 1.5 * c + 6.0 * std::log(std::cosh(0.5 * t))).epsilon(1e-13));
    CHECK(attraction_prime(nm, t) == doctest::Approx(s * c / 3.0 - 1.5 * s + 3.0 * std::tanh(0.5 * t)).epsilon(1e-13));
  }
  CHECK(attraction_value(nm, 0.0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(attraction_prime(nm, 0.0) == 0.0);
}

TEST_CASE("finite-difference derivative check for all families") {
  const double h = 1e-5;
  for (const auto& s : all_families()) {
    CAPTURE(to_string(s.attraction));
    CAPTURE(s.dim);
    for (double t = 0.1; t <= 5.0 + 1e-9; t += 0.1) {
      const double fd = (attraction_value(s, t + h) - attraction_value(s, t - h)) / (2 * h);
      REQUIRE(std::abs(attraction_prime(s, t) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("Laplacian consistency against finite differences") {
  const double h = 1e-4;
  for (const auto& s : all_families()) {
    CAPTURE(to_string(s.attraction));
    CAPTURE(s.dim);
    const double nm1 = static_cast<double>(s.dim - 1);
    for (double t = 0.1; t <= 5.0 + 1e-9; t += 0.1) {
      const double app = (attraction_prime(s, t + h) - attraction_prime(s, t - h)) / (2 * h);
      const double fd = app + nm1 / std::tanh(t) * attraction_prime(s, t);
      const double lap = attraction_laplacian(s, t);
      REQUIRE(std::abs(lap - fd) <= 1e-5 * std::max(1.0, std::abs(lap)));
    }
  }
}

TEST_CASE("attraction_laplacian values and limits") {
  CHECK(attraction_laplacian(PotentialSpec::constant(3), 2.0) == 1.0);
  CHECK(attraction_laplacian(PotentialSpec::cosh(2), 1.0) == doctest::Approx(std::cosh(1.0)));
  CHECK(attraction_laplacian(PotentialSpec::mixed(2, -1), 1.0) == doctest::Approx(2.0 - std::cosh(1.0)));
  const double c = std::cosh(0.7);
  CHECK(attraction_laplacian(PotentialSpec::nonmonotone(), 0.7) == doctest::Approx(c * c - 3 * c + 8.0 / 3.0));
  CHECK(attraction_laplacian(PotentialSpec::constant(2), 0.0) == 1.0);
  CHECK(attraction_laplacian(PotentialSpec::cosh(2), 0.0) == 1.0);
  CHECK(attraction_laplacian(PotentialSpec::mixed(2, -1), 0.0) == 1.0);
  CHECK(attraction_laplacian(PotentialSpec::nonmonotone(), 0.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("A'/sinh and its limit at 0") {
  for (const auto& s : all_families()) {
    for (double t : {0.05, 0.8, 3.0}) {
      CHECK(attraction_prime_over_sinh(s, t) == doctest::Approx(attraction_prime(s, t) / std::sinh(t)).epsilon(1e-12));
    }
    CHECK(attraction_prime_over_sinh(s, 0.0) == doctest::Approx(attraction_prime_over_sinh(s, 1e-6)).epsilon(1e-6));
  }
}

TEST_CASE("AttractionKernel in c = cosh(theta) agrees with theta-based evaluation") {
  for (const auto& s : all_families()) {
    const AttractionKernel k(s);
    for (double t : {0.0, 0.3, 1.0, 2.5}) {
      const double c = std::cosh(t);
      CHECK(k.laplacian(c) == doctest::Approx(attraction_laplacian(s, t)).epsilon(1e-12));
      CHECK(k.prime_over_sinh(c) == doctest::Approx(attraction_prime_over_sinh(s, t)).epsilon(1e-8));
      CHECK(k.value(c) == doctest::Approx(attraction_value(s, t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("full potential") {
  const auto g = PotentialSpec::newtonian_only(2);
  CHECK(potential_value(g, 1.0) == doctest::Approx(-std::log(std::tanh(0.5)) / (2.0 * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(potential_value(PotentialSpec::constant(2), 0.0), std::domain_error);

  PotentialSpec off{2, Attraction::None, 0.0, 0.0, false};
  for (double t : {0.0, 0.5, 3.0}) {
    CHECK(potential_value(off, t) == 0.0);
    CHECK(potential_force(off, t) == 0.0);
  }

  // short-range repulsion, long-range attraction, one sign change
  const auto s = PotentialSpec::constant(2);
  int changes = 0;
  double prev = potential_force(s, 1e-3);
  CHECK(prev < 0.0);
  for (double t = 0.01; t <= 5.0; t += 0.01) {
    const double f = potential_force(s, t);
    if ((f > 0) != (prev > 0)) ++changes;
    prev = f;
  }
  CHECK(prev > 0.0);
  CHECK(changes == 1);
}

TEST_CASE("PotentialSpec validation and names") {
  CHECK_THROWS_AS(PotentialSpec::mixed(0.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{3, Attraction::NonMonotone, 0, 0, true}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::constant(1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::mixed(NAN, 1.0).validate(), std::invalid_argument);
  CHECK_NOTHROW(PotentialSpec::mixed(2.0, -1.0).validate());
  CHECK_THROWS_AS(AttractionKernel(PotentialSpec::mixed(0.0, 0.0)), std::invalid_argument);

  for (Attraction a : {Attraction::None, Attraction::ConstantLaplacian, Attraction::HyperbolicCosine,
                       Attraction::Mixed, Attraction::NonMonotone}) {
    CHECK(parse_attraction(to_string(a)) == a);
  }
  CHECK_THROWS_AS(parse_attraction("quadratic"), std::invalid_argument);
}
