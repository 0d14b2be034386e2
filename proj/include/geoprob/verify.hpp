// The full verification battery: exact constants, quadrature identities, Monte
// Carlo estimates against their closed forms, goodness-of-fit tests and the
// geometric invariance properties.
#pragma once

#include "geoprob/constants.hpp"
#include "geoprob/crofton.hpp"
#include "geoprob/geom.hpp"
#include "geoprob/mc.hpp"
#include "geoprob/report.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace geoprob {

inline constexpr std::uint64_t kDefaultSeed = 20070101;
inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr std::uint64_t kMinVerifySamples = kMinHistogramSamples;

struct VerifyOptions {
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  bool strict = false;
  std::size_t bins = kDefaultBins;
  std::size_t panels = kDefaultCroftonPanels;
};

struct VerifyResult {
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass && !c.skipped) return false;
    }
    return true;
  }
};

namespace detail {

inline Check relative_check(std::string id, std::string name, double value, double reference,
                            double rel_tol) {
  const double err = std::abs(value - reference) / std::abs(reference);
  return {std::move(id), std::move(name), value, reference, rel_tol, err <= rel_tol, false, ""};
}

inline Check absolute_check(std::string id, std::string name, double value, double reference,
                            double tol) {
  return {std::move(id), std::move(name), value, reference, tol,
          std::abs(value - reference) <= tol, false, ""};
}

inline Check exact_check(std::string id, std::string name, bool ok, double value,
                         double reference, std::string detail = "") {
  return {std::move(id), std::move(name), value, reference, 0.0, ok, false, std::move(detail)};
}

// Tolerance max(4 SE, stated).
inline Check estimate_check(std::string id, const Estimate& e, double reference,
                            double stated_tol) {
  const double tol = std::max(4.0 * e.std_error, stated_tol);
  Check c = absolute_check(std::move(id), e.experiment, e.mean, reference, tol);
  c.detail = "n=" + std::to_string(e.n) + " se=" + format_double(e.std_error) +
             " degenerate=" + std::to_string(e.degenerate);
  return c;
}

inline Check gof_check(std::string id, const HistogramGof& h) {
  Check c{std::move(id), "gof_" + h.law, h.chi2, static_cast<double>(h.dof), h.threshold,
          h.pass(), false, ""};
  c.detail = "dof=" + std::to_string(h.dof) + " degenerate=" + std::to_string(h.degenerate);
  return c;
}

// (x)! for half-integer x = m - 1/2 by the recurrence x! = x (x-1)! from
// (-1/2)! = sqrt(pi).
inline PiRational half_factorial_by_recurrence(unsigned m) {
  PiRational v(1, 1, 1);
  for (unsigned k = 1; k <= m; ++k) v *= PiRational(2 * k - 1, 2);
  return v;
}

template <std::size_t D>
Point<D> random_rotation_apply(const std::array<std::array<double, D>, D>& r, const Point<D>& v,
                               const Point<D>& shift) {
  Point<D> out;
  for (std::size_t i = 0; i < D; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < D; ++j) s += r[i][j] * v[j];
    out.x[i] = s + shift[i];
  }
  return out;
}

// Orthogonal matrix from Gram-Schmidt on Gaussian columns.
template <std::size_t D>
std::array<std::array<double, D>, D> random_orthogonal(Xoshiro256& rng) {
  std::array<std::array<double, D>, D> q{};
  for (std::size_t c = 0; c < D; ++c) {
    std::array<double, D> v{};
    for (std::size_t i = 0; i < D; ++i) v[i] = rng.normal_pair()[0];
    for (std::size_t k = 0; k < c; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < D; ++i) d += v[i] * q[i][k];
      for (std::size_t i = 0; i < D; ++i) v[i] -= d * q[i][k];
    }
    double len = 0.0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    for (std::size_t i = 0; i < D; ++i) q[i][c] = v[i] / len;
  }
  return q;
}

}  // namespace detail

/// Runs every check. Monte Carlo checks are skipped (non-strict) or failed
/// (strict) when `samples` is below kMinVerifySamples.
inline VerifyResult run_verify(const VerifyOptions& opt) {
  using detail::absolute_check;
  using detail::exact_check;
  using detail::relative_check;
  constexpr double pi = std::numbers::pi;
  constexpr double kExactRel = 1e-12;
  VerifyResult out;
  auto& checks = out.checks;

  // 1. expected normalised simplex volumes in unit-ball sections
  checks.push_back(exact_check("1", "kingman_v(2) == 1/3", kingman_v(2) == PiRational(1, 3),
                               kingman_v(2).to_double(), 1.0 / 3.0));
  checks.push_back(relative_check("1", "kingman_v(3) == 35/(48 pi^2)", kingman_v(3).to_double(),
                                  35.0 / (48.0 * pi * pi), kExactRel));
  checks.push_back(exact_check("1", "kingman_v(4) == 9/715", kingman_v(4) == PiRational(9, 715),
                               kingman_v(4).to_double(), 9.0 / 715.0));

  // 2. Sylvester probabilities
  checks.push_back(relative_check("2", "sylvester_probability(2)",
                                  sylvester_probability(2).to_double(),
                                  1.0 - 35.0 / (12.0 * pi * pi), kExactRel));
  checks.push_back(exact_check("2", "sylvester_probability(3) == 134/143",
                               sylvester_probability(3) == PiSum(PiRational(134, 143)),
                               sylvester_probability(3).to_double(), 134.0 / 143.0));

  // 3. half-ball integral at N = 9
  {
    const PiRational exact = half_ball_integral(9);
    const auto quad = adaptive_simpson([](double p) { return std::pow(1.0 - p * p, 4); }, 0.0, 1.0);
    checks.push_back(exact_check("3", "half_ball_integral(9) == 128/315",
                                 exact == PiRational(128, 315), exact.to_double(), 128.0 / 315.0));
    checks.push_back(absolute_check("3", "half_ball_integral(9) vs quadrature", quad.value,
                                    exact.to_double(), 1e-10));
  }

  // 4. duplication formula
  {
    bool ok = half_integer_factorial(-1) == PiRational(1, 1, 1);
    int first_bad = -1;
    for (unsigned m = 0; m <= 10; ++m) {
      if (!(half_integer_factorial(2 * static_cast<int>(m) - 1) ==
            detail::half_factorial_by_recurrence(m))) {
        ok = false;
        if (first_bad < 0) first_bad = static_cast<int>(m);
      }
    }
    checks.push_back(exact_check("4", "duplication formula m=0..10 and (-1/2)! = sqrt(pi)", ok,
                                 half_integer_factorial(-1).to_double(), std::sqrt(pi),
                                 first_bad < 0 ? "" : "first mismatch m=" + std::to_string(first_bad)));
  }

  // 5. disk chord moments
  {
    const auto disk = ConvexBody2::unit_disk();
    checks.push_back(relative_check("5", "disk I0 = 2 pi", chord_moment(disk, 0).value, 2 * pi, 1e-8));
    checks.push_back(relative_check("5", "disk I1 = pi^2", chord_moment(disk, 1).value, pi * pi, 1e-8));
    checks.push_back(relative_check("5", "disk I3 = 3 pi^2", chord_moment(disk, 3).value, 3 * pi * pi, 1e-8));
  }

  // 6. I3 / A^2 = 3 for convex polygons
  {
    const auto square = ConvexBody2::unit_square();
    checks.push_back(absolute_check("6", "square I3/A^2", chord_moment(square, 3).value, 3.0, 1e-6));
    auto rng = RngStream{opt.seed, 0x6}.engine();
    double worst = 3.0;
    for (int k = 0; k < 20; ++k) {
      const std::size_t pts = 3 + static_cast<std::size_t>(rng.uniform() * 10.0);
      const Point2 center{rng.uniform() - 0.5, rng.uniform() - 0.5};
      const auto poly = random_convex_polygon(rng, pts, center, 0.5 + rng.uniform());
      const double a = poly.area();
      const double ratio = chord_moment(poly, 3).value / (a * a);
      if (std::abs(ratio - 3.0) > std::abs(worst - 3.0)) worst = ratio;
    }
    checks.push_back(absolute_check("6", "20 random polygons worst I3/A^2", worst, 3.0, 1e-6));
  }

  // 7. curve length from line counts
  {
    const Polyline segment({Point2{0.0, 0.0}, Point2{1.0, 0.0}});
    checks.push_back(absolute_check("7", "crofton_length(unit segment)",
                                    crofton_length(segment, opt.panels), 1.0, 1e-6));
    const auto gon = ConvexBody2::regular_polygon(1024);
    const Polyline ring = Polyline::closed(gon.vertices());
    checks.push_back(absolute_check("7", "crofton_length(1024-gon)", crofton_length(ring, opt.panels),
                                    1024.0 * 2.0 * std::sin(pi / 1024.0), 1e-6));
  }

  // 16. at most one inside event per quadruple
  {
    const auto bad = count_multiple_inside_events(100'000, opt.seed);
    checks.push_back(exact_check("16", "quadruples with >= 2 inside events", bad == 0,
                                 static_cast<double>(bad), 0.0));
  }

  // 17. invariance suites
  {
    auto rng = RngStream{opt.seed, 0x17}.engine();
    double worst_area = 0.0;
    double worst_volume = 0.0;
    int affine_mismatch = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto p2 = sample_ball_points<2, 4>(rng);
      const auto r2 = detail::random_orthogonal<2>(rng);
      const Point2 s2{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
      std::array<Point2, 4> m2;
      for (std::size_t i = 0; i < 4; ++i) m2[i] = detail::random_rotation_apply(r2, p2[i], s2);
      const double a0 = triangle_area(p2[0], p2[1], p2[2]);
      const double a1 = triangle_area(m2[0], m2[1], m2[2]);
      worst_area = std::max(worst_area, std::abs(a0 - a1) / std::max(a0, 1e-3));

      const auto p3 = sample_ball_points<3, 4>(rng);
      const auto r3 = detail::random_orthogonal<3>(rng);
      const Point3 s3{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
      std::array<Point3, 4> m3;
      for (std::size_t i = 0; i < 4; ++i) m3[i] = detail::random_rotation_apply(r3, p3[i], s3);
      const double v0 = tetra_volume(p3[0], p3[1], p3[2], p3[3]);
      const double v1 = tetra_volume(m3[0], m3[1], m3[2], m3[3]);
      worst_volume = std::max(worst_volume, std::abs(v0 - v1) / std::max(v0, 1e-3));

      // invertible affine map with condition number bounded away from singular
      const double a = 0.5 + rng.uniform(), b = rng.uniform() - 0.5;
      const double c = rng.uniform() - 0.5, d = 0.5 + rng.uniform();
      if (std::abs(a * d - b * c) < 0.1) continue;
      std::array<Point2, 4> aff;
      for (std::size_t i = 0; i < 4; ++i) {
        aff[i] = Point2{a * p2[i][0] + b * p2[i][1] + s2[0], c * p2[i][0] + d * p2[i][1] + s2[1]};
      }
      if (convex_position_4(p2) != convex_position_4(aff)) ++affine_mismatch;
    }
    // relative to max(measure, 1e-3): slivers are ill-conditioned under translation
    checks.push_back(absolute_check("17", "triangle area rigid invariance (rel)", worst_area, 0.0, 1e-10));
    checks.push_back(absolute_check("17", "tetra volume rigid invariance (rel)", worst_volume, 0.0, 1e-10));
    checks.push_back(exact_check("17", "convex_position_4 affine invariance", affine_mismatch == 0,
                                 affine_mismatch, 0.0));

    const Polyline chain({Point2{0.0, 0.0}, Point2{1.0, 0.2}, Point2{1.5, 1.0}, Point2{0.7, 1.6}});
    const double base = crofton_length(chain, opt.panels);
    double worst_len = 0.0;
    for (int t = 0; t < 5; ++t) {
      const auto r = detail::random_orthogonal<2>(rng);
      const Point2 s{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
      std::vector<Point2> moved;
      for (const auto& v : chain.vertices()) moved.push_back(detail::random_rotation_apply(r, v, s));
      worst_len = std::max(worst_len, std::abs(crofton_length(Polyline(moved), opt.panels) - base));
    }
    checks.push_back(absolute_check("17", "crofton_length rigid invariance", worst_len, 0.0, 1e-6));
  }

  // Monte Carlo block
  const bool enough = opt.samples >= kMinVerifySamples;
  if (!enough) {
    out.warnings.push_back("insufficient samples (" + std::to_string(opt.samples) + " < " +
                           std::to_string(kMinVerifySamples) + "); Monte Carlo checks " +
                           (opt.strict ? "failed" : "skipped"));
    Check budget{"8-14", "sample budget", static_cast<double>(opt.samples),
                 static_cast<double>(kMinVerifySamples), 0.0, false, !opt.strict, "insufficient samples"};
    checks.push_back(budget);
    return out;
  }

  const auto n = opt.samples;
  const auto seed = opt.seed;
  const auto w = opt.workers;
  using detail::estimate_check;

  checks.push_back(estimate_check("8", estimate_simplex_volume(2, n, seed, w),
                                  35.0 / (48.0 * pi), 1e-3));
  checks.push_back(estimate_check("9", estimate_sylvester(2, n, seed, w),
                                  sylvester_probability(2).to_double(), 2e-3));
  checks.push_back(estimate_check("9", estimate_sylvester(3, n, seed, w), 134.0 / 143.0, 1.5e-3));
  checks.push_back(estimate_check("10", estimate_center_triangle(n, seed, w), 4.0 / (9.0 * pi), 1e-3));
  checks.push_back(estimate_check("10", estimate_boundary_triangle(n, seed, w),
                                  35.0 / (36.0 * pi), 1.5e-3));
  checks.push_back(estimate_check("11", estimate_offcut(n, seed, w),
                                  reference_constant("offcut").to_double(), 3e-3));
  checks.push_back(estimate_check("12", estimate_simplex_volume(3, n, seed, w),
                                  12.0 * pi / 715.0, 5e-4));

  for (int dim = 2; dim <= 4; ++dim) {
    checks.push_back(detail::gof_check("13", secant_offset_histogram(dim, n, opt.bins, seed, w)));
  }
  checks.push_back(detail::gof_check("13", max_radius_gof(n, seed, w, opt.bins)));
  checks.push_back(absolute_check("13", "squared radius KS statistic", squared_radius_ks(n, seed, w),
                                  0.0, 0.002));

  {
    const Estimate md = estimate_mean_distance(n, seed, w);
    const double quad = chord_moment(ConvexBody2::unit_disk(), 4).value / (6.0 * pi * pi);
    Check c = estimate_check("14", md, quad, 1e-3);
    c.name = "mean_distance vs I4/(6 pi^2)";
    checks.push_back(c);
    checks.push_back(relative_check("14", "I4/(6 pi^2) vs 128/(45 pi)", quad, 128.0 / (45.0 * pi), 1e-8));
  }

  {
    const std::uint64_t small = std::min<std::uint64_t>(n, 100'000);
    const Estimate a = estimate_sylvester(2, small, seed, 4);
    const Estimate b = estimate_sylvester(2, small, seed, 4);
    checks.push_back(exact_check("15", "estimator rerun bit-identical (4 workers)",
                                 a.mean == b.mean && a.std_error == b.std_error, a.mean, b.mean));
  }
  return out;
}

inline Report verify_report(const VerifyOptions& opt, const VerifyResult& result) {
  Report r;
  r.command = "verify --samples " + std::to_string(opt.samples) + " --seed " +
              std::to_string(opt.seed) + " --workers " + std::to_string(opt.workers) +
              (opt.strict ? " --strict" : "");
  r.seed = opt.seed;
  r.checks = result.checks;
  Json warnings = Json::array();
  for (const auto& wmsg : result.warnings) warnings.push_back(wmsg);
  r.add("warnings", warnings);
  return r;
}

}  // namespace geoprob
