#include "geoprob/rng.hpp"
#include "geoprob/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

using namespace geoprob;

TEST(Welford, MatchesTwoPassAndMergesExactly) {
  Xoshiro256 rng(5);
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(3.0 + rng.uniform() * 2.0);
  Welford all;
  Welford left;
  Welford right;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    all.add(xs[i]);
    (i < 377 ? left : right).add(xs[i]);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(all.mean, mean, 1e-12);
  EXPECT_NEAR(all.variance(), ss / (xs.size() - 1), 1e-12);
  left.merge(right);
  EXPECT_EQ(left.n, all.n);
  EXPECT_NEAR(left.mean, all.mean, 1e-12);
  EXPECT_NEAR(left.variance(), all.variance(), 1e-12);
  Welford empty;
  empty.merge(all);
  EXPECT_EQ(empty.n, all.n);
}

TEST(Estimate, IntervalAndSigma) {
  Welford w;
  for (double x : {1.0, 2.0, 3.0, 4.0}) w.add(x);
  const auto e = Estimate::from("t", w, 1, 1);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.ci95.hi - e.ci95.lo, 2 * 1.96 * e.std_error, 1e-15);
  EXPECT_TRUE(e.within_sigma(2.5 + e.std_error, 1.0));
  EXPECT_FALSE(e.within_sigma(2.5 + 5 * e.std_error, 4.0));
  Welford one;
  one.add(1.0);
  EXPECT_THROW(Estimate::from("t", one, 1, 1), std::invalid_argument);
}

TEST(ChiSquare, QuantilesMatchReferenceTable) {
  EXPECT_NEAR(chi_square_quantile(0.99, 9), 21.66599433, 1e-6);
  EXPECT_NEAR(chi_square_quantile(0.99, 19), 36.19086913, 1e-6);
  EXPECT_NEAR(chi_square_quantile(0.99, 39), 62.42812102, 1e-6);
  EXPECT_NEAR(chi_square_quantile(0.99, 49), 74.91947431, 1e-6);
}

TEST(ChiSquare, CdfClosedForms) {
  // dof 2 is exponential with mean 2
  for (double x : {0.1, 1.0, 5.0, 30.0}) EXPECT_NEAR(chi_square_cdf(x, 2), 1 - std::exp(-x / 2), 1e-13);
  EXPECT_NEAR(chi_square_cdf(1.0, 1), std::erf(std::sqrt(0.5)), 1e-13);
  EXPECT_EQ(chi_square_cdf(-1.0, 3), 0.0);
  EXPECT_THROW(chi_square_cdf(1.0, 0), std::domain_error);
  EXPECT_THROW(chi_square_quantile(1.0, 3), std::domain_error);
}

TEST(KolmogorovSmirnov, KnownStatistics) {
  EXPECT_NEAR(ks_statistic_uniform({0.5}), 0.5, 1e-15);
  EXPECT_NEAR(ks_statistic_uniform({0.25, 0.75}), 0.25, 1e-15);
  EXPECT_NEAR(ks_statistic_uniform({0.0, 0.0}), 1.0, 1e-15);
  EXPECT_THROW(ks_statistic_uniform({}), std::invalid_argument);
  Xoshiro256 rng(9);
  std::vector<double> u;
  for (int i = 0; i < 100000; ++i) u.push_back(rng.uniform());
  // 1% critical value is about 1.63 / sqrt(n)
  EXPECT_LT(ks_statistic_uniform(u), 1.63 / std::sqrt(100000.0));
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  auto a = RngStream{42, 0}.engine();
  auto b = RngStream{42, 0}.engine();
  auto c = RngStream{42, 1}.engine();
  auto d = RngStream{43, 0}.engine();
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    same_c += x == c.next();
    same_d += x == d.next();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(Rng, UniformAndNormalMoments) {
  Xoshiro256 rng(1);
  Welford u;
  Welford g;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    ASSERT_GT(rng.uniform_positive(), 0.0);
    u.add(x);
    for (double z : rng.normal_pair()) g.add(z);
  }
  EXPECT_NEAR(u.mean, 0.5, 4 * u.std_error());
  EXPECT_NEAR(u.variance(), 1.0 / 12, 2e-3);
  EXPECT_NEAR(g.mean, 0.0, 4 * g.std_error());
  EXPECT_NEAR(g.variance(), 1.0, 1e-2);
}

}  // namespace
