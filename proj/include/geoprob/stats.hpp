// Streaming moments, Monte Carlo estimate records, chi-square and
// Kolmogorov-Smirnov helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoprob {

/// Welford accumulator with Chan's pairwise merge.
struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double total = na + nb;
    const double delta = o.mean - mean;
    mean += delta * nb / total;
    m2 += o.m2 + delta * delta * na * nb / total;
    n += o.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error() const {
    return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Monte Carlo estimate of an expectation.
struct Estimate {
  std::string experiment;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  Interval ci95;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t degenerate = 0;  // probability-zero configurations met while sampling

  static Estimate from(std::string experiment, const Welford& acc, std::uint64_t seed,
                       unsigned workers, std::uint64_t degenerate = 0) {
    if (acc.n < 2) throw std::invalid_argument("Estimate: need at least two samples");
    Estimate e;
    e.experiment = std::move(experiment);
    e.mean = acc.mean;
    e.std_error = acc.std_error();
    e.n = acc.n;
    e.ci95 = {e.mean - 1.96 * e.std_error, e.mean + 1.96 * e.std_error};
    e.seed = seed;
    e.workers = workers;
    e.degenerate = degenerate;
    return e;
  }

  /// |mean - truth| <= k * std_error.
  bool within_sigma(double truth, double k) const {
    return std::abs(mean - truth) <= k * std_error;
  }
};

// ---------------------------------------------------------------------------
// Regularized incomplete gamma P(a, x): power series for x < a + 1, Lentz
// continued fraction for Q(a, x) otherwise.

namespace detail {

inline double gamma_p_series(double a, double x, double tol) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * tol) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_continued_fraction(double a, double x, double tol) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < tol) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

inline double regularized_gamma_p(double a, double x, double tol = 1e-15) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("regularized_gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x, tol);
  return 1.0 - detail::gamma_q_continued_fraction(a, x, tol);
}

inline double chi_square_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

/// Quantile of chi-square(dof) by bisection on the CDF, to 1e-10 in x.
inline double chi_square_quantile(double prob, int dof) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::domain_error("chi_square_quantile: prob in (0,1)");
  double lo = 0.0;
  double hi = std::max(1.0, static_cast<double>(dof));
  while (chi_square_cdf(hi, dof) < prob) hi *= 2.0;
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_cdf(mid, dof) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Kolmogorov-Smirnov distance between the sample and the uniform law on [0,1].
inline double ks_statistic_uniform(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ks_statistic_uniform: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace geoprob
