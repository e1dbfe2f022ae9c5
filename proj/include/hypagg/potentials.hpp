#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hypagg {

/// Attraction families A(theta) paired with Newtonian repulsion.
enum class Attraction {
  None,
  ConstantLaplacian,  // Laplacian of A is identically 1
  HyperbolicCosine,   // A = (cosh theta - 1)/n, Laplacian cosh theta
  Mixed,              // b0 * ConstantLaplacian + b1 * HyperbolicCosine
  NonMonotone,        // sinh^2/6 - 3/2 cosh + 6 ln cosh(theta/2), n = 2 only
};

/// CLI names: none, constant, cosh, mixed, nonmonotone.
std::string_view to_string(Attraction a);
Attraction parse_attraction(std::string_view name);

/// Interaction potential K(theta) = [newtonian] Phi(theta) + A(theta) on H^n.
struct PotentialSpec {
  std::size_t dim = 2;
  Attraction attraction = Attraction::ConstantLaplacian;
  double b0 = 0.0;
  double b1 = 0.0;
  bool include_newtonian = true;

  static PotentialSpec constant(std::size_t dim = 2);
  static PotentialSpec cosh(std::size_t dim = 2);
  static PotentialSpec mixed(double b0, double b1, std::size_t dim = 2);
  static PotentialSpec nonmonotone();
  static PotentialSpec newtonian_only(std::size_t dim = 2);

  /// Throws std::invalid_argument on a bad family/dimension/coefficient combination.
  void validate() const;
};

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(std::size_t n);
/// Surface area n * alpha(n) of the unit sphere S^{n-1}.
double sphere_area(std::size_t n);

/// int_0^theta sinh^m(s) ds.
double sinh_power_integral(std::size_t m, double theta);

/// Newtonian kernel Phi(theta): Green's function of -Laplacian on H^n.
double green_phi(double theta, std::size_t n);
/// Phi'(theta) = -1 / (n alpha(n) sinh^{n-1} theta).
double green_phi_prime(double theta, std::size_t n);

double attraction_value(const PotentialSpec& spec, double theta);
double attraction_prime(const PotentialSpec& spec, double theta);
/// Radial Laplacian A'' + (n-1) coth(theta) A'; analytic limit at theta = 0.
double attraction_laplacian(const PotentialSpec& spec, double theta);
/// A'(theta) / sinh(theta), with its finite limit at theta = 0.
double attraction_prime_over_sinh(const PotentialSpec& spec, double theta);

double potential_value(const PotentialSpec& spec, double theta);
/// K'(theta). Negative values repel, positive values attract.
double potential_force(const PotentialSpec& spec, double theta);

/// Fast evaluation of the attraction kernels as functions of c = cosh(theta).
///
/// The radial integrals only ever see cosh of the pair distance (law of cosines),
/// so n = 2 families are evaluated without an arccosh.
class AttractionKernel {
 public:
  explicit AttractionKernel(PotentialSpec spec);

  double laplacian(double c) const;
  double prime_over_sinh(double c) const;
  double value(double c) const;

  const PotentialSpec& spec() const { return spec_; }

 private:
  PotentialSpec spec_;
  bool closed_form_;
};

}  // namespace hypagg
