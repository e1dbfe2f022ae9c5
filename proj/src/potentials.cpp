#include "hypagg/potentials.hpp"

#include "hypagg/hyperboloid.hpp"
#include "hypagg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypagg {

namespace {

using std::numbers::pi;

double acosh_of(double c) { return arccosh1p(std::max(0.0, c - 1.0)); }

double require_positive_theta(double theta) {
  if (!(theta > 0.0)) {
    throw std::domain_error("Newtonian kernel is singular at theta = " + std::to_string(theta));
  }
  return theta;
}

// A_c'(theta) = int_0^theta sinh^{n-1} / sinh^{n-1} theta
double constant_prime(std::size_t n, double theta) {
  if (n == 2) return std::tanh(0.5 * theta);
  if (theta < 1e-6) return theta / static_cast<double>(n);
  return sinh_power_integral(n - 1, theta) / std::pow(std::sinh(theta), static_cast<double>(n - 1));
}

double constant_prime_over_sinh(std::size_t n, double theta) {
  if (n == 2) return 1.0 / (1.0 + std::cosh(theta));
  if (theta < 1e-6) return 1.0 / static_cast<double>(n);
  return sinh_power_integral(n - 1, theta) / std::pow(std::sinh(theta), static_cast<double>(n));
}

double constant_value(std::size_t n, double theta) {
  if (n == 2) {
    const double h = 0.5 * theta;
    // ln cosh h = h + log1p(exp(-2h)) - ln 2
    return 2.0 * (h + std::log1p(std::exp(-2.0 * h)) - std::numbers::ln2);
  }
  if (n == 3) {
    if (theta < 1e-4) return theta * theta / 6.0;
    return 0.5 * (theta / std::tanh(theta) - 1.0);
  }
  return quad::integrate([n](double s) { return constant_prime(n, s); }, 0.0, theta);
}

double cosh_value(std::size_t n, double theta) {
  const double s = std::sinh(0.5 * theta);
  return 2.0 * s * s / static_cast<double>(n);
}

double nonmonotone_value(double theta) {
  const double s = std::sinh(theta);
  const double h = 0.5 * theta;
  const double ln_cosh_h = h + std::log1p(std::exp(-2.0 * h)) - std::numbers::ln2;
  return s * s / 6.0 - 1.5 * std::cosh(theta) + 6.0 * ln_cosh_h;
}

double nonmonotone_prime(double theta) {
  const double s = std::sinh(theta);
  return s * std::cosh(theta) / 3.0 - 1.5 * s + 3.0 * std::tanh(0.5 * theta);
}

}  // namespace

std::string_view to_string(Attraction a) {
  switch (a) {
    case Attraction::None: return "none";
    case Attraction::ConstantLaplacian: return "constant";
    case Attraction::HyperbolicCosine: return "cosh";
    case Attraction::Mixed: return "mixed";
    case Attraction::NonMonotone: return "nonmonotone";
  }
  return "unknown";
}

Attraction parse_attraction(std::string_view name) {
  if (name == "none") return Attraction::None;
  if (name == "constant") return Attraction::ConstantLaplacian;
  if (name == "cosh") return Attraction::HyperbolicCosine;
  if (name == "mixed") return Attraction::Mixed;
  if (name == "nonmonotone") return Attraction::NonMonotone;
  throw std::invalid_argument("unknown attraction family '" + std::string(name) +
                              "' (expected constant|cosh|mixed|nonmonotone|none)");
}

PotentialSpec PotentialSpec::constant(std::size_t dim) {
  return {dim, Attraction::ConstantLaplacian, 0.0, 0.0, true};
}
PotentialSpec PotentialSpec::cosh(std::size_t dim) {
  return {dim, Attraction::HyperbolicCosine, 0.0, 0.0, true};
}
PotentialSpec PotentialSpec::mixed(double b0, double b1, std::size_t dim) {
  return {dim, Attraction::Mixed, b0, b1, true};
}
PotentialSpec PotentialSpec::nonmonotone() { return {2, Attraction::NonMonotone, 0.0, 0.0, true}; }
PotentialSpec PotentialSpec::newtonian_only(std::size_t dim) {
  return {dim, Attraction::None, 0.0, 0.0, true};
}

void PotentialSpec::validate() const {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
  if (attraction == Attraction::Mixed && b0 == 0.0 && b1 == 0.0) {
    throw std::invalid_argument("mixed attraction requires (b0, b1) != (0, 0)");
  }
  if (attraction == Attraction::NonMonotone && dim != 2) {
    throw std::invalid_argument("nonmonotone attraction is defined for dim = 2 only");
  }
  if (!std::isfinite(b0) || !std::isfinite(b1)) {
    throw std::invalid_argument("mixed coefficients must be finite");
  }
}

double unit_ball_volume(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return std::pow(pi, h) / std::tgamma(h + 1.0);
}

double sphere_area(std::size_t n) { return static_cast<double>(n) * unit_ball_volume(n); }

double sinh_power_integral(std::size_t m, double theta) {
  if (theta <= 0.0) return 0.0;
  switch (m) {
    case 0: return theta;
    case 1: {
      const double s = std::sinh(0.5 * theta);
      return 2.0 * s * s;
    }
    default: {
      const double p = static_cast<double>(m);
      if (theta < 1.0) {
        return quad::integrate([p](double s) { return std::pow(std::sinh(s), p); }, 0.0, theta);
      }
      // I_m = sinh^{m-1} cosh / m - (m-1)/m I_{m-2}
      const double sh = std::sinh(theta);
      return std::pow(sh, p - 1.0) * std::cosh(theta) / p - (p - 1.0) / p * sinh_power_integral(m - 2, theta);
    }
  }
}

double green_phi(double theta, std::size_t n) {
  require_positive_theta(theta);
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (n == 2) {
    if (theta < 1.0) return -std::log(std::tanh(0.5 * theta)) / (2.0 * pi);
    // tanh(theta/2) = 1 - 2/(e^theta + 1)
    return -std::log1p(-2.0 / (std::exp(theta) + 1.0)) / (2.0 * pi);
  }
  if (n == 3) return 1.0 / (2.0 * pi * std::expm1(2.0 * theta));
  const double p = 1.0 - static_cast<double>(n);
  const double tail =
      quad::integrate_to_infinity([p](double s) { return std::pow(std::sinh(s), p); }, theta);
  return tail / sphere_area(n);
}

double green_phi_prime(double theta, std::size_t n) {
  require_positive_theta(theta);
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  return -1.0 / (sphere_area(n) * std::pow(std::sinh(theta), static_cast<double>(n - 1)));
}

double attraction_value(const PotentialSpec& spec, double theta) {
  if (theta < 0.0) throw std::domain_error("attraction evaluated at negative theta");
  const std::size_t n = spec.dim;
  switch (spec.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return constant_value(n, theta);
    case Attraction::HyperbolicCosine: return cosh_value(n, theta);
    case Attraction::Mixed:
      return spec.b0 * constant_value(n, theta) + spec.b1 * cosh_value(n, theta);
    case Attraction::NonMonotone: return nonmonotone_value(theta);
  }
  return 0.0;
}

double attraction_prime(const PotentialSpec& spec, double theta) {
  if (theta < 0.0) throw std::domain_error("attraction evaluated at negative theta");
  const std::size_t n = spec.dim;
  const double nd = static_cast<double>(n);
  switch (spec.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return constant_prime(n, theta);
    case Attraction::HyperbolicCosine: return std::sinh(theta) / nd;
    case Attraction::Mixed:
      return spec.b0 * constant_prime(n, theta) + spec.b1 * std::sinh(theta) / nd;
    case Attraction::NonMonotone: return nonmonotone_prime(theta);
  }
  return 0.0;
}

double attraction_laplacian(const PotentialSpec& spec, double theta) {
  if (theta < 0.0) throw std::domain_error("attraction evaluated at negative theta");
  const double c = std::cosh(theta);
  switch (spec.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return 1.0;
    case Attraction::HyperbolicCosine: return c;
    case Attraction::Mixed: return spec.b0 + spec.b1 * c;
    case Attraction::NonMonotone: return c * c - 3.0 * c + 8.0 / 3.0;
  }
  return 0.0;
}

double attraction_prime_over_sinh(const PotentialSpec& spec, double theta) {
  if (theta < 0.0) throw std::domain_error("attraction evaluated at negative theta");
  const std::size_t n = spec.dim;
  const double nd = static_cast<double>(n);
  switch (spec.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return constant_prime_over_sinh(n, theta);
    case Attraction::HyperbolicCosine: return 1.0 / nd;
    case Attraction::Mixed: return spec.b0 * constant_prime_over_sinh(n, theta) + spec.b1 / nd;
    case Attraction::NonMonotone: {
      const double c = std::cosh(theta);
      return c / 3.0 - 1.5 + 3.0 / (1.0 + c);
    }
  }
  return 0.0;
}

double potential_value(const PotentialSpec& spec, double theta) {
  const double a = attraction_value(spec, theta);
  return spec.include_newtonian ? green_phi(theta, spec.dim) + a : a;
}

double potential_force(const PotentialSpec& spec, double theta) {
  const double a = attraction_prime(spec, theta);
  return spec.include_newtonian ? green_phi_prime(theta, spec.dim) + a : a;
}

AttractionKernel::AttractionKernel(PotentialSpec spec)
    : spec_(spec), closed_form_(spec.dim == 2 || (spec.attraction != Attraction::ConstantLaplacian &&
                                                  spec.attraction != Attraction::Mixed)) {
  spec_.validate();
}

double AttractionKernel::laplacian(double c) const {
  switch (spec_.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return 1.0;
    case Attraction::HyperbolicCosine: return c;
    case Attraction::Mixed: return spec_.b0 + spec_.b1 * c;
    case Attraction::NonMonotone: return c * c - 3.0 * c + 8.0 / 3.0;
  }
  return 0.0;
}

double AttractionKernel::prime_over_sinh(double c) const {
  if (!closed_form_) return attraction_prime_over_sinh(spec_, acosh_of(c));
  const double nd = static_cast<double>(spec_.dim);
  switch (spec_.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::ConstantLaplacian: return 1.0 / (1.0 + c);
    case Attraction::HyperbolicCosine: return 1.0 / nd;
    case Attraction::Mixed: return spec_.b0 / (1.0 + c) + spec_.b1 / nd;
    case Attraction::NonMonotone: return c / 3.0 - 1.5 + 3.0 / (1.0 + c);
  }
  return 0.0;
}

double AttractionKernel::value(double c) const {
  const double nd = static_cast<double>(spec_.dim);
  switch (spec_.attraction) {
    case Attraction::None: return 0.0;
    case Attraction::HyperbolicCosine: return (c - 1.0) / nd;
    case Attraction::ConstantLaplacian:
      // 2 ln cosh(theta/2) = ln((1 + cosh theta)/2)
      if (spec_.dim == 2) return std::log(0.5 * (1.0 + c));
      break;
    case Attraction::Mixed:
      if (spec_.dim == 2) return spec_.b0 * std::log(0.5 * (1.0 + c)) + spec_.b1 * (c - 1.0) / nd;
      break;
    case Attraction::NonMonotone:
      // sinh^2/6 - 3/2 cosh + 3 ln((1 + cosh)/2)
      return (c * c - 1.0) / 6.0 - 1.5 * c + 3.0 * std::log(0.5 * (1.0 + c));
  }
  return attraction_value(spec_, acosh_of(c));
}

}  // namespace hypagg
