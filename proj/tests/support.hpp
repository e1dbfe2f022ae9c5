#pragma once

#include "hypagg/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace testsupport {

using hypagg::HPoint;
using hypagg::Vector;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

  Vector direction(std::size_t n) {
    std::normal_distribution<double> normal;
    Vector xi(static_cast<Eigen::Index>(n));
    do {
      for (auto& v : xi) v = normal(gen);
    } while (xi.norm() == 0.0);
    return xi / xi.norm();
  }

  // Polar parametrization: (cosh r, sinh r xi) with r uniform in [0, max_r].
  HPoint point(std::size_t n, double max_r = 3.0) {
    return hypagg::from_polar({uniform(0.0, max_r), direction(n)});
  }

  Vector boost(std::size_t n, double max_speed = 0.9) { return uniform(0.0, max_speed) * direction(n); }
};

inline double max_abs_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Coordinate difference scaled by the size of the first point.
inline double point_error(const HPoint& a, const HPoint& b) {
  return max_abs_diff(a.coords(), b.coords()) / std::max(1.0, a[0]);
}

inline double sheet_defect(const Vector& x) {
  return std::abs(x[0] * x[0] - x.tail(x.size() - 1).squaredNorm() - 1.0) / (x[0] * x[0]);
}

// Composite Simpson rule with an even panel count.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * i);
  return s * h / 3.0;
}

// Bisection on a sign change.
template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace testsupport
