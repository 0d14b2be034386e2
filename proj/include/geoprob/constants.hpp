// Closed-form constants of random-secant geometry: half-integer factorials,
// unit-ball volumes, central binomials, the expected normalised simplex volume
// in a unit-ball cross-section, Sylvester convex-position probabilities, and the
// offset densities of random secant flats.
#pragma once

#include "geoprob/pi_rational.hpp"
#include "geoprob/quadrature.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoprob {

inline BigInt factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

/// (two_k / 2)! for two_k >= -1. Integers give k!; half-integers use the
/// duplication formula (m - 1/2)! = sqrt(pi) (2m)! / (4^m m!).
inline PiRational half_integer_factorial(int two_k) {
  if (two_k < -1) throw std::domain_error("half_integer_factorial: argument below -1/2");
  if (two_k % 2 == 0) return PiRational(factorial(static_cast<unsigned>(two_k / 2)));
  const unsigned m = static_cast<unsigned>((two_k + 1) / 2);
  BigInt four_pow = BigInt(1) << (2 * m);
  return PiRational(factorial(2 * m), four_pow * factorial(m), 1);
}

/// Volume of the unit ball in R^n: pi^(n/2) / (n/2)!.
inline PiRational unit_ball_volume(int n) {
  if (n < 1) throw std::domain_error("unit_ball_volume: dimension must be >= 1");
  return PiRational::pi_power(n) / half_integer_factorial(n);
}

/// Integral over [0,1] of (1 - p^2)^((N-1)/2), equal to beta_N / (2 beta_{N-1})
/// with beta_0 = 1.
inline PiRational half_ball_integral(int N) {
  if (N < 1) throw std::domain_error("half_ball_integral: N must be >= 1");
  const PiRational lower = N == 1 ? PiRational(1) : unit_ball_volume(N - 1);
  return unit_ball_volume(N) / (PiRational(2) * lower);
}

/// C(n, n/2) = n! / ((n/2)!)^2 for any n >= 0.
inline PiRational central_binomial(int n) {
  if (n < 0) throw std::domain_error("central_binomial: n must be >= 0");
  return PiRational(factorial(static_cast<unsigned>(n))) / half_integer_factorial(n).pow(2);
}

/// C(n, n/2) for odd n, a rational multiple of 1/pi.
inline PiRational half_integer_binomial(int n) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("half_integer_binomial: n must be odd and >= 1");
  return central_binomial(n);
}

/// Expected volume of the simplex spanned by n uniform points of the unit ball
/// B^(n-1), divided by the volume of that ball:
/// C(n, n/2)^n / C(n^2, n^2/2) / 2^(n-1).
inline PiRational kingman_v(int n) {
  if (n < 2) throw std::domain_error("kingman_v: n must be >= 2");
  return central_binomial(n).pow(n) / central_binomial(n * n) /
         PiRational(BigInt(1) << (n - 1));
}

/// Probability that d + 2 uniform points of B^d are in convex position.
inline PiSum sylvester_probability(int d) {
  if (d < 1 || d > 3) throw std::domain_error("sylvester_probability: d must be 1, 2 or 3");
  return PiSum(PiRational(1)) - PiRational(d + 2) * kingman_v(d + 1);
}

// ---------------------------------------------------------------------------
// Densities on bounded intervals.

struct DensityLaw {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> pdf;

  double operator()(double x) const { return (x < lo || x > hi) ? 0.0 : pdf(x); }

  /// Integral of the density over [a, b] (clamped to the support).
  double mass(double a, double b, double tol = 1e-13) const {
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (a >= b) return 0.0;
    return adaptive_simpson(pdf, a, b, {.abs_tol = tol, .max_depth = 40}).value;
  }
};

/// Density of the offset |p| of the flat through `dim` uniform points of the
/// unit ball B^dim: proportional to (cross-section volume)^(dim+1), that is
/// (1 - p^2)^((dim^2 - 1)/2), normalised by half_ball_integral(dim^2).
inline DensityLaw secant_offset_density(int dim) {
  if (dim < 2 || dim > 4) throw std::domain_error("secant_offset_density: dim must be 2, 3 or 4");
  const double norm = 1.0 / half_ball_integral(dim * dim).to_double();
  const double exponent = 0.5 * (dim * dim - 1);
  return {"secant_offset_" + std::to_string(dim) + "d", 0.0, 1.0,
          [norm, exponent](double p) {
            const double s = 1.0 - p * p;
            return s <= 0.0 ? 0.0 : norm * std::pow(s, exponent);
          }};
}

/// Largest of three radial distances of uniform disk points: 6 c^5.
inline DensityLaw max_radius_density() {
  return {"max_radius", 0.0, 1.0, [](double c) { return 6.0 * std::pow(c, 5); }};
}

/// Distance to the centre of a uniform point of B^dim: dim r^(dim-1).
inline DensityLaw radial_density(int dim) {
  if (dim < 1) throw std::domain_error("radial_density: dim must be >= 1");
  return {"radius_" + std::to_string(dim) + "d", 0.0, 1.0,
          [dim](double r) { return dim * std::pow(r, dim - 1); }};
}

// ---------------------------------------------------------------------------

struct NamedConstant {
  std::string name;
  PiSum exact;
  double value() const { return exact.to_double(); }
};

/// Expected triangle areas in the unit disk and related reference values.
inline std::vector<NamedConstant> reference_constants() {
  const PiRational inv_pi = PiRational::pi_power(-2);
  return {
      {"center_triangle", PiRational(4, 9) * inv_pi},
      {"boundary_triangle", PiRational(35, 36) * inv_pi},
      {"disk_triangle", PiRational(35, 48) * inv_pi},
      {"offcut", PiSum(PiRational(35, 72) * inv_pi) + PiRational(1, 3, 2)},
      {"unit_interval_distance", PiRational(1, 3)},
  };
}

inline PiSum reference_constant(const std::string& name) {
  for (const auto& c : reference_constants()) {
    if (c.name == name) return c.exact;
  }
  throw std::out_of_range("reference_constant: unknown name " + name);
}

/// Expected volume of the simplex of dim + 1 uniform points of B^dim, i.e.
/// kingman_v(dim + 1) * beta_dim.
inline PiRational expected_simplex_volume(int dim) {
  return kingman_v(dim + 1) * unit_ball_volume(dim);
}

}  // namespace geoprob
