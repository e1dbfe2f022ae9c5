#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypagg::quad {

/// Composite Simpson rule with `panels` (even) subintervals on [a, b].
template <typename F>
double simpson(F&& f, double a, double b, std::size_t panels) {
  if (panels == 0 || panels % 2 != 0) {
    throw std::invalid_argument("Simpson rule needs an even, positive panel count");
  }
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

/// Simpson weights for `panels` subintervals of width h (size panels + 1).
std::vector<double> simpson_weights(std::size_t panels, double h);

/// Trapezoid rule on arbitrary increasing abscissae.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Running trapezoid integral: out[i] = integral from x[0] to x[i].
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y);

/// Adaptive Gauss-Kronrod on a finite interval, absolute tolerance ~1e-12 relative to the result.
double integrate(double (*f)(double, const void*), const void* ctx, double a, double b);

/// Adaptive integration of int_a^inf for an integrand with exponential decay.
double integrate_to_infinity(double (*f)(double, const void*), const void* ctx, double a);

template <typename F>
double integrate(F&& f, double a, double b) {
  auto thunk = [](double x, const void* c) { return (*static_cast<const F*>(c))(x); };
  return integrate(+thunk, &f, a, b);
}

template <typename F>
double integrate_to_infinity(F&& f, double a) {
  auto thunk = [](double x, const void* c) { return (*static_cast<const F*>(c))(x); };
  return integrate_to_infinity(+thunk, &f, a);
}

}  // namespace hypagg::quad
