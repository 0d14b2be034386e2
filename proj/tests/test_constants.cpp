#include "geoprob/constants.hpp"
#include "geoprob/quadrature.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

using namespace geoprob;
constexpr double pi = std::numbers::pi;

TEST(PiRational, ReducesAndMultiplies) {
  const PiRational a(6, -8, 1);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 4);
  EXPECT_EQ(a.pi_half_power(), 1);
  const PiRational b = a * PiRational(4, 3, -1);
  EXPECT_EQ(b, PiRational(-1));
  EXPECT_EQ(PiRational(2, 3, 2).pow(3), PiRational(8, 27, 6));
  EXPECT_EQ(PiRational(2, 3, 2).pow(-2), PiRational(9, 4, -4));
  EXPECT_EQ(PiRational(0, 5, 3), PiRational(0));
  EXPECT_THROW(PiRational(1, 0), std::domain_error);
  EXPECT_THROW(PiRational(1) / PiRational(0), std::domain_error);
}

TEST(PiRational, FloatRendering) {
  EXPECT_DOUBLE_EQ(PiRational(1, 1, 1).to_double(), std::sqrt(pi));
  EXPECT_DOUBLE_EQ(PiRational(35, 48, -4).to_double(), 35.0 / (48.0 * pi * pi));
  EXPECT_EQ(PiRational(35, 48, -4).to_string(), "35/48*pi^-2");
  EXPECT_EQ(PiRational(3, 4, 1).to_string(), "3/4*pi^(1/2)");
}

TEST(PiSum, CollectsLikeTerms) {
  PiSum s = PiSum(PiRational(1)) - PiRational(35, 12, -4);
  EXPECT_EQ(s.terms().size(), 2u);
  EXPECT_NEAR(s.to_double(), 0.7044798810, 1e-10);
  s += PiRational(35, 12, -4);
  EXPECT_EQ(s, PiSum(PiRational(1)));
  EXPECT_EQ((PiSum(PiRational(1, 3)) - PiRational(1, 3)).terms().size(), 0u);
}

TEST(HalfIntegerFactorial, Examples) {
  EXPECT_EQ(half_integer_factorial(-1), PiRational(1, 1, 1));
  EXPECT_EQ(half_integer_factorial(4), PiRational(2));
  EXPECT_EQ(half_integer_factorial(0), PiRational(1));
  // (3/2)! = (3/2)(1/2)(-1/2)!
  EXPECT_EQ(half_integer_factorial(3), PiRational(3, 4, 1));
  EXPECT_THROW(half_integer_factorial(-2), std::domain_error);
}

TEST(HalfIntegerFactorial, DuplicationMatchesRecurrence) {
  // (m - 1/2)! built up from (-1/2)! = sqrt(pi) by x! = x (x - 1)!
  PiRational by_recurrence(1, 1, 1);
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) by_recurrence *= PiRational(2 * m - 1, 2);
    EXPECT_EQ(half_integer_factorial(2 * m - 1), by_recurrence) << "m=" << m;
    EXPECT_NEAR(half_integer_factorial(2 * m - 1).to_double(), std::tgamma(m + 0.5),
                1e-13 * std::tgamma(m + 0.5));
  }
}

TEST(UnitBallVolume, Examples) {
  EXPECT_EQ(unit_ball_volume(1), PiRational(2));
  EXPECT_EQ(unit_ball_volume(2), PiRational(1, 1, 2));
  EXPECT_EQ(unit_ball_volume(3), PiRational(4, 3, 2));
  EXPECT_EQ(unit_ball_volume(4), PiRational(1, 2, 4));
  EXPECT_THROW(unit_ball_volume(0), std::domain_error);
  for (int n = 1; n <= 12; ++n) {
    const double gamma_form = std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    EXPECT_NEAR(unit_ball_volume(n).to_double(), gamma_form, 1e-13 * gamma_form);
  }
}

TEST(HalfBallIntegral, Examples) {
  EXPECT_EQ(half_ball_integral(9), PiRational(128, 315));
  EXPECT_EQ(half_ball_integral(1), PiRational(1));
  EXPECT_EQ(half_ball_integral(4), PiRational(3, 16, 2));
  EXPECT_EQ(half_ball_integral(16), unit_ball_volume(16) / (PiRational(2) * unit_ball_volume(15)));
  EXPECT_THROW(half_ball_integral(0), std::domain_error);
}

TEST(HalfBallIntegral, AgreesWithQuadrature) {
  for (int N = 1; N <= 20; ++N) {
    const double e = 0.5 * (N - 1);
    const double exact = half_ball_integral(N).to_double();
    const auto adaptive = adaptive_simpson([e](double p) { return std::pow(1.0 - p * p, e); }, 0.0, 1.0);
    EXPECT_NEAR(adaptive.value, exact, 1e-10) << "N=" << N;
    EXPECT_NEAR(oracle::half_ball_integral(e), exact, 1e-10) << "N=" << N;
  }
}

TEST(CentralBinomial, HalfIntegerExamples) {
  // 6 / ((3 sqrt(pi) / 4)^2)
  EXPECT_EQ(half_integer_binomial(3), PiRational(32, 3, -2));
  EXPECT_EQ(half_integer_binomial(1), PiRational(4, 1, -2));
  EXPECT_THROW(half_integer_binomial(2), std::domain_error);
  EXPECT_EQ(central_binomial(16), PiRational(12870));
  for (int n = 0; n <= 30; ++n) {
    EXPECT_NEAR(central_binomial(n).to_double(), oracle::central_binomial(n),
                1e-12 * oracle::central_binomial(n));
  }
}

TEST(CentralBinomial, ClosingIdentityHoldsExactly) {
  // C(n+1, (n+1)/2) = 2^(2n+4) / (pi (n+2)) * C(n+2, (n+2)/2)^-1
  for (int n = 0; n <= 20; ++n) {
    const PiRational rhs = PiRational(BigInt(1) << (2 * n + 4), BigInt(n + 2), -2) /
                           central_binomial(n + 2);
    EXPECT_EQ(central_binomial(n + 1), rhs) << "n=" << n;
  }
}

TEST(KingmanV, Examples) {
  EXPECT_EQ(kingman_v(2), PiRational(1, 3));
  EXPECT_EQ(kingman_v(3), PiRational(35, 48, -4));
  EXPECT_NEAR(kingman_v(3).to_double(), 35.0 / (48.0 * pi * pi), 1e-14 * kingman_v(3).to_double());
  EXPECT_EQ(kingman_v(4), PiRational(9, 715));
  EXPECT_THROW(kingman_v(1), std::domain_error);
}

TEST(KingmanV, PiPowerParity) {
  for (int n = 2; n <= 9; ++n) {
    const PiRational v = kingman_v(n);
    EXPECT_EQ(v.pi_half_power(), n % 2 == 0 ? 0 : 2 * (1 - n)) << "n=" << n;
    const double gamma_form = std::pow(oracle::central_binomial(n), n) /
                              oracle::central_binomial(n * n) / std::pow(2.0, n - 1);
    EXPECT_NEAR(v.to_double(), gamma_form, 1e-11 * gamma_form) << "n=" << n;
  }
}

TEST(SylvesterProbability, Examples) {
  EXPECT_NEAR(sylvester_probability(2).to_double(), 0.7044798810, 1e-10);
  EXPECT_EQ(sylvester_probability(2), PiSum(PiRational(1)) - PiRational(35, 12, -4));
  EXPECT_EQ(sylvester_probability(3), PiSum(PiRational(134, 143)));
  EXPECT_NEAR(sylvester_probability(3).to_double(), 0.9370629, 1e-7);
  EXPECT_EQ(sylvester_probability(1), PiSum());
  EXPECT_THROW(sylvester_probability(4), std::domain_error);
}

TEST(SecantOffsetDensity, Examples) {
  EXPECT_NEAR(secant_offset_density(2)(0.0), 16.0 / (3.0 * pi), 1e-14);
  EXPECT_NEAR(secant_offset_density(3)(0.0), 315.0 / 128.0, 1e-14);
  for (int dim = 2; dim <= 4; ++dim) EXPECT_EQ(secant_offset_density(dim)(1.0), 0.0);
  EXPECT_THROW(secant_offset_density(5), std::domain_error);
}

TEST(DensityLaw, EachIntegratesToOne) {
  for (const auto& law : {secant_offset_density(2), secant_offset_density(3),
                          secant_offset_density(4), max_radius_density(), radial_density(2),
                          radial_density(3)}) {
    EXPECT_NEAR(law.mass(law.lo, law.hi), 1.0, 1e-10) << law.name;
    EXPECT_GE(law(0.5), 0.0);
  }
}

TEST(ReferenceConstants, Values) {
  EXPECT_NEAR(reference_constant("disk_triangle").to_double(), 0.2321009587, 1e-10);
  EXPECT_NEAR(reference_constant("offcut").to_double(), 1.2019315236, 1e-10);
  EXPECT_EQ(reference_constant("unit_interval_distance"), PiSum(PiRational(1, 3)));
  EXPECT_NEAR(reference_constant("center_triangle").to_double(), 0.1414710605, 1e-10);
  EXPECT_NEAR(reference_constant("boundary_triangle").to_double(), 0.3094679449, 1e-10);
  EXPECT_THROW(reference_constant("nope"), std::out_of_range);
}

TEST(ReferenceConstants, Consistency) {
  // integral over c of 6 c^5 * c^2 * (35 / (36 pi)) = 35 / (48 pi)
  const PiRational boundary = reference_constant("boundary_triangle").single_term();
  EXPECT_EQ(PiRational(6, 8) * boundary, reference_constant("disk_triangle").single_term());
  // with A = C and 4A + 3B = pi, B + 2C = pi/3 + (2/3) A
  const PiRational disk = reference_constant("disk_triangle").single_term();
  EXPECT_EQ(reference_constant("offcut"), PiSum(PiRational(1, 3, 2)) + PiRational(2, 3) * disk);
  // E[area] of the disk triangle is the normalised section volume times pi
  EXPECT_EQ(expected_simplex_volume(2), disk);
  EXPECT_EQ(expected_simplex_volume(3), PiRational(12, 715, 2));
  // the offcut integral of A(h)(pi - A(h)) against the chord-offset law
  const auto law = secant_offset_density(2);
  const auto q = adaptive_simpson(
      [&](double h) {
        const double a = pi / 2 - h * std::sqrt(1 - h * h) - std::asin(h);
        return 2.0 / pi * a * (pi - a) * law(h);
      },
      0.0, 1.0);
  EXPECT_NEAR(q.value, reference_constant("offcut").to_double(), 1e-9);
}

TEST(Quadrature, AdaptiveAndCompositeSimpson) {
  const auto q = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi);
  EXPECT_NEAR(q.value, 2.0, 1e-12);
  EXPECT_GE(q.error, 0.0);
  EXPECT_NEAR(composite_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1), 4.0, 1e-14);
  EXPECT_THROW(composite_simpson([](double) { return 1.0; }, 0.0, 1.0, 0), std::invalid_argument);
  // integrand vanishing at the first midpoint probes
  const auto bump = adaptive_simpson([](double x) { return x > 0.9 ? 1.0 : 0.0; }, 0.0, 1.0);
  EXPECT_NEAR(bump.value, 0.1, 1e-9);
}

}  // namespace
