#include "geoprob/mc.hpp"
#include "geoprob/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

using namespace geoprob;
constexpr double pi = std::numbers::pi;

TEST(BallSampling, StaysInsideAndIsUniformInRadius) {
  Xoshiro256 rng(123);
  Welford r2;
  Welford r3;
  Welford x1;
  for (int i = 0; i < 100000; ++i) {
    const auto p2 = sample_uniform_ball<2>(rng);
    const auto p3 = sample_uniform_ball<3>(rng);
    const auto p1 = sample_uniform_ball<1>(rng);
    ASSERT_LE(norm(p2), 1.0);
    ASSERT_LE(norm(p3), 1.0);
    ASSERT_LE(std::abs(p1[0]), 1.0);
    r2.add(norm(p2));
    r3.add(norm(p3));
    x1.add(p1[0]);
  }
  // E|X| = D / (D + 1)
  EXPECT_NEAR(r2.mean, 2.0 / 3, 4 * r2.std_error());
  EXPECT_NEAR(r3.mean, 3.0 / 4, 4 * r3.std_error());
  EXPECT_NEAR(x1.mean, 0.0, 4 * x1.std_error());
  EXPECT_NEAR(x1.variance(), 1.0 / 3, 5e-3);
}

TEST(Estimators, DeterministicForSeedAndWorkers) {
  const auto a = estimate_sylvester(2, 20000, 99, 1);
  const auto b = estimate_sylvester(2, 20000, 99, 1);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  const auto c = estimate_offcut(20000, 99, 4);
  const auto d = estimate_offcut(20000, 99, 4);
  EXPECT_EQ(c.mean, d.mean);
  EXPECT_EQ(c.n, 20000u);
  EXPECT_EQ(c.workers, 4u);
  EXPECT_NE(estimate_offcut(20000, 100, 4).mean, c.mean);
}

TEST(Estimators, RejectBadRuns) {
  EXPECT_THROW(estimate_sylvester(2, 100, 1), std::invalid_argument);
  EXPECT_THROW(estimate_sylvester(2, 20000, 1, 0), std::invalid_argument);
  EXPECT_THROW(estimate_sylvester(4, 20000, 1), std::domain_error);
  EXPECT_THROW(estimate_simplex_volume(4, 20000, 1), std::domain_error);
  EXPECT_THROW(secant_offset_histogram(2, 1000, 40, 1), std::invalid_argument);
  EXPECT_THROW(secant_offset_histogram(2, 100000, 5, 1), std::invalid_argument);
  EXPECT_THROW(secant_offset_histogram(5, 100000, 40, 1), std::domain_error);
}

// Repeated small runs: every estimate lands within 4 standard errors of its
// exact value.
TEST(Estimators, RepeatedRunsAgreeWithExactValues) {
  for (const auto e : {Experiment::sylvester, Experiment::simplex, Experiment::center_triangle,
                       Experiment::boundary_triangle, Experiment::offcut,
                       Experiment::mean_distance}) {
    for (int dim : {2, 3}) {
      if (dim == 3 && e != Experiment::sylvester && e != Experiment::simplex) continue;
      const double truth = exact_reference(e, dim).to_double();
      for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const auto est = run_experiment(e, dim, 10000, 1000 + rep, 1);
        EXPECT_TRUE(est.within_sigma(truth, 4.0))
            << est.experiment << " rep " << rep << " mean " << est.mean << " truth " << truth;
      }
    }
  }
  const auto seg = estimate_simplex_volume(1, 100000, 5);
  EXPECT_TRUE(seg.within_sigma(1.0 / 3, 4.0)) << seg.mean;
}

TEST(Estimators, SylvesterMatchesSimplexVolume) {
  // P(convex) = 1 - (d + 2) E[simplex] / |B^d|
  const auto syl = estimate_sylvester(2, 200000, 17);
  const auto vol = estimate_simplex_volume(2, 200000, 18);
  const double implied = 1 - 4 * vol.mean / pi;
  const double se = std::hypot(syl.std_error, 4 * vol.std_error / pi);
  EXPECT_NEAR(syl.mean, implied, 4 * se);
}

TEST(Estimators, BoundaryAnchorAndScaling) {
  const auto a = estimate_boundary_triangle(100000, 21, 1, 0.0);
  const auto b = estimate_boundary_triangle(100000, 21, 1, 2.0);
  const double truth = reference_constant("boundary_triangle").to_double();
  EXPECT_TRUE(a.within_sigma(truth, 4.0));
  EXPECT_TRUE(b.within_sigma(truth, 4.0));
  // same draws, radius 2: areas scale by exactly 4
  const auto unit = estimate_center_triangle(20000, 8);
  const auto twice = estimate_center_triangle(20000, 8, 1, 2.0);
  EXPECT_NEAR(twice.mean, 4 * unit.mean, 1e-12);
}

TEST(Offcut, EdgeCases) {
  // chord through the centre: both sides are half discs
  EXPECT_NEAR(offcut_value(Point2{-0.5, 0.0}, Point2{0.5, 0.0}, Point2{0.0, 0.3}), pi / 2, 1e-12);
  // chord y = 0.5, R above it: the far side is the large part
  const double small = segment_area(0.5);
  EXPECT_NEAR(offcut_value(Point2{0.0, 0.5}, Point2{0.2, 0.5}, Point2{0.0, 0.9}), pi - small, 1e-12);
  EXPECT_NEAR(offcut_value(Point2{0.0, 0.5}, Point2{0.2, 0.5}, Point2{0.0, 0.0}), small, 1e-12);
  EXPECT_THROW(offcut_value(Point2{0.1, 0.1}, Point2{0.1, 0.1}, Point2{0.0, 0.0}), DegenerateError);
}

TEST(Histograms, SecantOffsetShapes) {
  const auto h3 = secant_offset_histogram(3, 100000, 40, 4);
  EXPECT_TRUE(h3.pass()) << h3.chi2;
  const auto mode = std::max_element(h3.observed.begin(), h3.observed.end());
  EXPECT_EQ(mode - h3.observed.begin(), 0);

  const auto h4 = secant_offset_histogram(4, 100000, 40, 6, 2);
  const auto law = secant_offset_density(4);
  const double mean = adaptive_simpson([&](double p) { return p * law(p); }, 0.0, 1.0).value;
  EXPECT_NEAR(h4.mean, mean, 3 * h4.mean_std_error);
  EXPECT_EQ(h4.dof, 39);
  EXPECT_NEAR(h4.threshold, 62.42812102, 1e-6);
  std::uint64_t total = 0;
  for (auto c : h4.observed) total += c;
  EXPECT_EQ(total, 100000u);
}

TEST(Histograms, MaxRadius) {
  const auto h = max_radius_gof(200000, 12, 3);
  EXPECT_TRUE(h.pass()) << h.chi2;
  EXPECT_EQ(h.degenerate, 0u);
  EXPECT_NEAR(h.mean, 6.0 / 7, 4 * h.mean_std_error);
  // empirical CDF against c^6 at the bin edges
  std::uint64_t cum = 0;
  for (std::size_t b = 0; b < h.observed.size(); ++b) {
    cum += h.observed[b];
    const double c = h.edges[b + 1];
    EXPECT_NEAR(static_cast<double>(cum) / h.n, std::pow(c, 6), 5e-3);
  }
}

TEST(Histograms, SquaredRadiusIsUniform) {
  EXPECT_LT(squared_radius_ks(1000000, 77, 2), 1.63 / std::sqrt(1e6));
}

TEST(Sylvester, MultipleInsideEventsNeverOccur) {
  EXPECT_EQ(count_multiple_inside_events(100000, 3), 0u);
}

TEST(RandomPolygon, IsConvexAndInsideDisk) {
  Xoshiro256 rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto poly = random_convex_polygon(rng, 10, Point2{2.0, -1.0}, 0.5);
    EXPECT_GE(poly.vertices().size(), 3u);
    for (const auto& v : poly.vertices()) EXPECT_LE(norm(v - Point2{2.0, -1.0}), 0.5 + 1e-12);
  }
}

TEST(Experiments, ParseTags) {
  EXPECT_EQ(parse_experiment("offcut"), Experiment::offcut);
  EXPECT_EQ(parse_experiment("center-triangle"), Experiment::center_triangle);
  EXPECT_FALSE(parse_experiment("bogus").has_value());
  EXPECT_NEAR(exact_reference(Experiment::mean_distance, 2).to_double(), 128 / (45 * pi), 1e-15);
}

}  // namespace
