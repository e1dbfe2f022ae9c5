#include "hypagg/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace hypagg::quad {

std::vector<double> simpson_weights(std::size_t panels, double h) {
  if (panels == 0 || panels % 2 != 0) {
    throw std::invalid_argument("Simpson rule needs an even, positive panel count");
  }
  std::vector<double> w(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    const double c = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = c * h / 3.0;
  }
  return w;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

double integrate(double (*f)(double, const void*), const void* ctx, double a, double b) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double x) { return f(x, ctx); }, a, b, 8, 1e-12, &err);
}

double integrate_to_infinity(double (*f)(double, const void*), const void* ctx, double a) {
  // exp_sinh keeps static node tables after first use.
  static boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double x) { return f(x, ctx); }, a,
                              std::numeric_limits<double>::infinity(), 1e-12);
}

}  // namespace hypagg::quad
