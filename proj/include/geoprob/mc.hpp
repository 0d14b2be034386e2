// Seeded Monte Carlo estimators for random triangles, simplices, convex
// position and secant offsets in unit balls.
//
// Parallel runs split the sample indices round-robin: worker w handles indices
// w, w + W, w + 2W, ... with its own stream (seed, w), and partial results are
// merged in worker order. Output therefore depends only on (seed, workers, n).
#pragma once

#include "geoprob/constants.hpp"
#include "geoprob/geom.hpp"
#include "geoprob/rng.hpp"
#include "geoprob/stats.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace geoprob {

inline constexpr std::uint64_t kMinEstimatorSamples = 10'000;
inline constexpr std::uint64_t kMinHistogramSamples = 100'000;
inline constexpr double kGofLevel = 0.99;

/// Uniform point of the unit ball B^D: normalised Gaussian direction times
/// U^(1/D).
template <std::size_t D>
Point<D> sample_uniform_ball(Xoshiro256& rng) {
  std::array<double, (D + 1) / 2 * 2> g{};
  double r2 = 0.0;
  do {
    for (std::size_t i = 0; i < g.size(); i += 2) {
      const auto pair = rng.normal_pair();
      g[i] = pair[0];
      g[i + 1] = pair[1];
    }
    r2 = 0.0;
    for (std::size_t i = 0; i < D; ++i) r2 += g[i] * g[i];
  } while (r2 == 0.0);
  const double u = rng.uniform();
  const double radius = D == 1 ? u : (D == 2 ? std::sqrt(u) : std::pow(u, 1.0 / D));
  const double scale = radius / std::sqrt(r2);
  Point<D> p;
  for (std::size_t i = 0; i < D; ++i) p.x[i] = g[i] * scale;
  return p;
}

template <std::size_t D>
Point<D> sample_uniform_ball(const RngStream& stream) {
  auto rng = stream.engine();
  return sample_uniform_ball<D>(rng);
}

template <std::size_t D, std::size_t K>
std::array<Point<D>, K> sample_ball_points(Xoshiro256& rng) {
  std::array<Point<D>, K> pts;
  for (auto& p : pts) p = sample_uniform_ball<D>(rng);
  return pts;
}

namespace detail {

inline void check_run(std::uint64_t n, unsigned workers, std::uint64_t min_n, const char* who) {
  if (workers == 0) throw std::invalid_argument(std::string(who) + ": workers must be >= 1");
  if (n < min_n) {
    throw std::invalid_argument(std::string(who) + ": needs at least " + std::to_string(min_n) +
                                " samples");
  }
}

// Runs `work(worker_index, rng, count)` for each worker and returns the
// per-worker results in worker order.
template <typename Result, typename Work>
std::vector<Result> run_workers(std::uint64_t n, std::uint64_t seed, unsigned workers,
                                const Work& work) {
  std::vector<Result> results(workers);
  auto job = [&](unsigned w) {
    auto rng = RngStream{seed, w}.engine();
    const std::uint64_t count = n > w ? (n - w + workers - 1) / workers : 0;
    results[w] = work(rng, count);
  };
  if (workers == 1) {
    job(0);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(job, w);
  for (auto& t : threads) t.join();
  return results;
}

struct Partial {
  Welford acc;
  std::uint64_t degenerate = 0;
};

// `draw(rng, degenerate)` returns one sample value.
template <typename Draw>
Estimate estimate_mean(std::string tag, std::uint64_t n, std::uint64_t seed, unsigned workers,
                       const Draw& draw) {
  auto parts = run_workers<Partial>(n, seed, workers, [&](Xoshiro256& rng, std::uint64_t count) {
    Partial part;
    for (std::uint64_t i = 0; i < count; ++i) part.acc.add(draw(rng, part.degenerate));
    return part;
  });
  Partial total;
  for (const auto& p : parts) {
    total.acc.merge(p.acc);
    total.degenerate += p.degenerate;
  }
  return Estimate::from(std::move(tag), total.acc, seed, workers, total.degenerate);
}

}  // namespace detail

/// Mean measure of the simplex of dim + 1 uniform points of B^dim. For dim 1
/// the segment length is divided by the length of B^1.
inline Estimate estimate_simplex_volume(int dim, std::uint64_t n, std::uint64_t seed,
                                        unsigned workers = 1) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_simplex_volume");
  const std::string tag = "simplex_" + std::to_string(dim) + "d";
  switch (dim) {
    case 1:
      return detail::estimate_mean(tag, n, seed, workers, [](Xoshiro256& rng, std::uint64_t&) {
        const auto p = sample_ball_points<1, 2>(rng);
        return 0.5 * std::abs(p[0][0] - p[1][0]);
      });
    case 2:
      return detail::estimate_mean(tag, n, seed, workers, [](Xoshiro256& rng, std::uint64_t&) {
        const auto p = sample_ball_points<2, 3>(rng);
        return triangle_area(p[0], p[1], p[2]);
      });
    case 3:
      return detail::estimate_mean(tag, n, seed, workers, [](Xoshiro256& rng, std::uint64_t&) {
        const auto p = sample_ball_points<3, 4>(rng);
        return tetra_volume(p[0], p[1], p[2], p[3]);
      });
    default:
      throw std::domain_error("estimate_simplex_volume: dim must be 1, 2 or 3");
  }
}

/// Fraction of samples in which dim + 2 uniform points of B^dim are in convex
/// position. Degenerate samples count as not convex and are tallied.
inline Estimate estimate_sylvester(int dim, std::uint64_t n, std::uint64_t seed,
                                   unsigned workers = 1) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_sylvester");
  const std::string tag = "sylvester_" + std::to_string(dim) + "d";
  auto score = [](Configuration c, std::uint64_t& degenerate) {
    if (c == Configuration::degenerate) ++degenerate;
    return c == Configuration::convex ? 1.0 : 0.0;
  };
  switch (dim) {
    case 2:
      return detail::estimate_mean(tag, n, seed, workers,
                                   [&](Xoshiro256& rng, std::uint64_t& degenerate) {
                                     const auto p = sample_ball_points<2, 4>(rng);
                                     return score(classify_quadruple(p), degenerate);
                                   });
    case 3:
      return detail::estimate_mean(tag, n, seed, workers,
                                   [&](Xoshiro256& rng, std::uint64_t& degenerate) {
                                     const auto p = sample_ball_points<3, 5>(rng);
                                     return score(classify_quintuple(p), degenerate);
                                   });
    default:
      throw std::domain_error("estimate_sylvester: dim must be 2 or 3");
  }
}

/// Mean area of the triangle formed by the centre and two uniform disk points.
/// `radius` scales the disk.
inline Estimate estimate_center_triangle(std::uint64_t n, std::uint64_t seed, unsigned workers = 1,
                                         double radius = 1.0) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_center_triangle");
  return detail::estimate_mean(
      "center_triangle", n, seed, workers, [radius](Xoshiro256& rng, std::uint64_t&) {
        const auto p = sample_ball_points<2, 2>(rng);
        return triangle_area(Point2{0.0, 0.0}, radius * p[0], radius * p[1]);
      });
}

/// Mean area of the triangle with one vertex fixed on the unit circle at angle
/// `anchor_angle` and two uniform disk points.
inline Estimate estimate_boundary_triangle(std::uint64_t n, std::uint64_t seed,
                                           unsigned workers = 1,
                                           double anchor_angle = std::numbers::pi / 2) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_boundary_triangle");
  const Point2 anchor{std::cos(anchor_angle), std::sin(anchor_angle)};
  return detail::estimate_mean("boundary_triangle", n, seed, workers,
                               [anchor](Xoshiro256& rng, std::uint64_t&) {
                                 const auto p = sample_ball_points<2, 2>(rng);
                                 return triangle_area(anchor, p[0], p[1]);
                               });
}

/// Area cut off by the chord through P and Q on the side away from R, for
/// P, Q, R uniform in the unit disk.
inline double offcut_value(const Point2& p, const Point2& q, const Point2& r) {
  const Point2 d = q - p;
  const double len = norm(d);
  if (len <= kPredicateEps) throw DegenerateError("offcut_value: coincident chord points");
  Point2 normal{-d[1] / len, d[0] / len};
  double h = dot(normal, p);
  if (h < 0.0) {
    normal = -1.0 * normal;
    h = -h;
  }
  h = std::min(h, 1.0);
  const double small = segment_area(h);
  // R beyond the chord lies in the smaller portion, so the far side is the larger.
  return dot(normal, r) > h ? std::numbers::pi - small : small;
}

inline Estimate estimate_offcut(std::uint64_t n, std::uint64_t seed, unsigned workers = 1) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_offcut");
  return detail::estimate_mean("offcut", n, seed, workers,
                               [](Xoshiro256& rng, std::uint64_t& degenerate) {
                                 for (;;) {
                                   const auto p = sample_ball_points<2, 3>(rng);
                                   if (norm(p[1] - p[0]) <= kPredicateEps) {
                                     ++degenerate;
                                     continue;
                                   }
                                   return offcut_value(p[0], p[1], p[2]);
                                 }
                               });
}

/// Mean distance between two uniform points of the unit disk.
inline Estimate estimate_mean_distance(std::uint64_t n, std::uint64_t seed, unsigned workers = 1) {
  detail::check_run(n, workers, kMinEstimatorSamples, "estimate_mean_distance");
  return detail::estimate_mean("mean_distance", n, seed, workers,
                               [](Xoshiro256& rng, std::uint64_t&) {
                                 const auto p = sample_ball_points<2, 2>(rng);
                                 return norm(p[0] - p[1]);
                               });
}

// ---------------------------------------------------------------------------
// Histogram goodness of fit.

struct HistogramGof {
  std::string law;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> edges;
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  double chi2 = 0.0;
  int dof = 0;
  double threshold = 0.0;  // kGofLevel quantile of chi-square(dof)
  std::uint64_t n = 0;
  std::uint64_t degenerate = 0;
  double mean = 0.0;  // sample mean of the binned values
  double mean_std_error = 0.0;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  bool pass() const { return chi2 < threshold; }
};

namespace detail {

struct BinnedPartial {
  std::vector<std::uint64_t> counts;
  Welford acc;
  std::uint64_t degenerate = 0;
};

// `draw(rng, degenerate)` returns one value in [0, 1].
template <typename Draw>
HistogramGof histogram_gof(const DensityLaw& law, std::size_t bins, std::uint64_t n,
                           std::uint64_t seed, unsigned workers, const Draw& draw) {
  auto parts =
      run_workers<BinnedPartial>(n, seed, workers, [&](Xoshiro256& rng, std::uint64_t count) {
        BinnedPartial part;
        part.counts.assign(bins, 0);
        const double width = law.hi - law.lo;
        for (std::uint64_t i = 0; i < count; ++i) {
          const double x = draw(rng, part.degenerate);
          part.acc.add(x);
          auto bin = static_cast<std::size_t>((x - law.lo) / width * static_cast<double>(bins));
          part.counts[std::min(bin, bins - 1)]++;
        }
        return part;
      });

  HistogramGof out;
  out.law = law.name;
  out.lo = law.lo;
  out.hi = law.hi;
  out.n = n;
  out.seed = seed;
  out.workers = workers;
  out.observed.assign(bins, 0);
  Welford acc;
  for (const auto& p : parts) {
    for (std::size_t b = 0; b < bins; ++b) out.observed[b] += p.counts[b];
    acc.merge(p.acc);
    out.degenerate += p.degenerate;
  }
  out.mean = acc.mean;
  out.mean_std_error = acc.std_error();
  out.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    out.edges[b] = law.lo + (law.hi - law.lo) * static_cast<double>(b) / static_cast<double>(bins);
  }
  out.expected.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.expected[b] = static_cast<double>(n) * law.mass(out.edges[b], out.edges[b + 1]);
    const double diff = static_cast<double>(out.observed[b]) - out.expected[b];
    out.chi2 += diff * diff / out.expected[b];
  }
  out.dof = static_cast<int>(bins) - 1;
  out.threshold = chi_square_quantile(kGofLevel, out.dof);
  return out;
}

inline void check_histogram(std::uint64_t n, std::size_t bins, unsigned workers, const char* who) {
  check_run(n, workers, kMinHistogramSamples, who);
  if (bins < 10) throw std::invalid_argument(std::string(who) + ": needs at least 10 bins");
}

}  // namespace detail

inline constexpr std::size_t kDefaultBins = 40;

/// Offset of the flat through `dim` uniform points of B^dim, binned on [0, 1]
/// against secant_offset_density(dim).
inline HistogramGof secant_offset_histogram(int dim, std::uint64_t n, std::size_t bins,
                                            std::uint64_t seed, unsigned workers = 1) {
  detail::check_histogram(n, bins, workers, "secant_offset_histogram");
  const DensityLaw law = secant_offset_density(dim);
  auto redraw = [](auto sample_offset) {
    return [sample_offset](Xoshiro256& rng, std::uint64_t& degenerate) {
      for (;;) {
        try {
          return sample_offset(rng);
        } catch (const DegenerateError&) {
          ++degenerate;
        }
      }
    };
  };
  switch (dim) {
    case 2:
      return detail::histogram_gof(law, bins, n, seed, workers, redraw([](Xoshiro256& rng) {
                                     const auto p = sample_ball_points<2, 2>(rng);
                                     return line_offset(p[0], p[1]);
                                   }));
    case 3:
      return detail::histogram_gof(law, bins, n, seed, workers, redraw([](Xoshiro256& rng) {
                                     const auto p = sample_ball_points<3, 3>(rng);
                                     return flat_from_points(std::span<const Point3, 3>(p)).p;
                                   }));
    case 4:
      return detail::histogram_gof(law, bins, n, seed, workers, redraw([](Xoshiro256& rng) {
                                     const auto p = sample_ball_points<4, 4>(rng);
                                     return flat_from_points(std::span<const Point4, 4>(p)).p;
                                   }));
    default:
      throw std::domain_error("secant_offset_histogram: dim must be 2, 3 or 4");
  }
}

/// Largest distance to the centre among three uniform disk points, against 6 c^5.
inline HistogramGof max_radius_gof(std::uint64_t n, std::uint64_t seed, unsigned workers = 1,
                                   std::size_t bins = kDefaultBins) {
  detail::check_histogram(n, bins, workers, "max_radius_gof");
  return detail::histogram_gof(max_radius_density(), bins, n, seed, workers,
                               [](Xoshiro256& rng, std::uint64_t&) {
                                 double c = 0.0;
                                 for (int k = 0; k < 3; ++k) {
                                   c = std::max(c, norm(sample_uniform_ball<2>(rng)));
                                 }
                                 return c;
                               });
}

/// KS distance of |X|^2 from uniform on [0,1] for X uniform in the unit disk.
inline double squared_radius_ks(std::uint64_t n, std::uint64_t seed, unsigned workers = 1) {
  detail::check_run(n, workers, kMinEstimatorSamples, "squared_radius_ks");
  auto parts = detail::run_workers<std::vector<double>>(
      n, seed, workers, [](Xoshiro256& rng, std::uint64_t count) {
        std::vector<double> v;
        v.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
          const auto p = sample_uniform_ball<2>(rng);
          v.push_back(dot(p, p));
        }
        return v;
      });
  std::vector<double> all;
  all.reserve(n);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return ks_statistic_uniform(std::move(all));
}

/// Number of sampled quadruples of disk points in which two or more points lie
/// inside the triangle of the other three.
inline std::uint64_t count_multiple_inside_events(std::uint64_t n, std::uint64_t seed) {
  auto rng = RngStream{seed, 0}.engine();
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto p = sample_ball_points<2, 4>(rng);
    if (classify_quadruple(p) == Configuration::degenerate) continue;
    if (count_inside_events(p) >= 2) ++bad;
  }
  return bad;
}

/// Convex polygon spanned by `points` uniform points of the disk of the given
/// radius centred at `center`; redrawn until the hull has at least 3 vertices.
inline ConvexBody2 random_convex_polygon(Xoshiro256& rng, std::size_t points,
                                         const Point2& center = Point2{0.0, 0.0},
                                         double radius = 1.0) {
  for (;;) {
    std::vector<Point2> pts;
    pts.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
      pts.push_back(center + radius * sample_uniform_ball<2>(rng));
    }
    auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) continue;
    try {
      return ConvexBody2::polygon(std::move(hull));
    } catch (const std::invalid_argument&) {
      // nearly collinear hull corner; draw again
    }
  }
}

// ---------------------------------------------------------------------------
// Named experiments.

enum class Experiment { simplex, sylvester, center_triangle, boundary_triangle, offcut, mean_distance };

inline std::optional<Experiment> parse_experiment(std::string_view tag) {
  if (tag == "simplex") return Experiment::simplex;
  if (tag == "sylvester") return Experiment::sylvester;
  if (tag == "center-triangle") return Experiment::center_triangle;
  if (tag == "boundary-triangle") return Experiment::boundary_triangle;
  if (tag == "offcut") return Experiment::offcut;
  if (tag == "mean-distance") return Experiment::mean_distance;
  return std::nullopt;
}

/// Exact expectation of an experiment; mean distance uses 128 / (45 pi).
inline PiSum exact_reference(Experiment e, int dim) {
  switch (e) {
    case Experiment::simplex:
      if (dim == 1) return kingman_v(2);
      return expected_simplex_volume(dim);
    case Experiment::sylvester:
      return sylvester_probability(dim);
    case Experiment::center_triangle:
      return reference_constant("center_triangle");
    case Experiment::boundary_triangle:
      return reference_constant("boundary_triangle");
    case Experiment::offcut:
      return reference_constant("offcut");
    case Experiment::mean_distance:
      return PiRational(128, 45, -2);
  }
  throw std::logic_error("exact_reference: unreachable");
}

inline Estimate run_experiment(Experiment e, int dim, std::uint64_t n, std::uint64_t seed,
                               unsigned workers) {
  switch (e) {
    case Experiment::simplex: return estimate_simplex_volume(dim, n, seed, workers);
    case Experiment::sylvester: return estimate_sylvester(dim, n, seed, workers);
    case Experiment::center_triangle: return estimate_center_triangle(n, seed, workers);
    case Experiment::boundary_triangle: return estimate_boundary_triangle(n, seed, workers);
    case Experiment::offcut: return estimate_offcut(n, seed, workers);
    case Experiment::mean_distance: return estimate_mean_distance(n, seed, workers);
  }
  throw std::logic_error("run_experiment: unreachable");
}

}  // namespace geoprob
