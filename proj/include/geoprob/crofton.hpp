// Numerical integral geometry over the invariant line measure dp dtheta:
// intersection counts of polylines, curve length from line counts, chord-length
// moments of convex bodies and the pair-distance moments they determine.
#pragma once

#include "geoprob/geom.hpp"
#include "geoprob/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoprob {

/// Open polygonal chain.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw std::invalid_argument("Polyline: needs at least 2 vertices");
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
      if (norm(vertices_[i + 1] - vertices_[i]) <= kPredicateEps) {
        throw std::invalid_argument("Polyline: consecutive vertices coincide");
      }
    }
  }

  /// Closed boundary of a polygon as a chain returning to its first vertex.
  static Polyline closed(const std::vector<Point2>& ring) {
    std::vector<Point2> v = ring;
    v.push_back(ring.front());
    return Polyline(std::move(v));
  }

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t segments() const { return vertices_.size() - 1; }

  double length() const {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
      len += norm(vertices_[i + 1] - vertices_[i]);
    }
    return len;
  }

  /// This chain followed by `tail`; the junction vertex is shared when the
  /// chains meet.
  Polyline concat(const Polyline& tail) const {
    std::vector<Point2> v = vertices_;
    auto first = tail.vertices_.begin();
    if (*first == v.back()) ++first;
    v.insert(v.end(), first, tail.vertices_.end());
    return Polyline(std::move(v));
  }

 private:
  std::vector<Point2> vertices_;
};

/// Number of crossings of the line with the chain. A vertex lying exactly on
/// the line is counted as if the line were shifted slightly away from the
/// origin, which counts a corner once when the line separates its neighbours.
inline int eta_count(const Polyline& curve, const LineCoords2& line) {
  const Point2 n = line.normal();
  const auto& v = curve.vertices();
  int count = 0;
  bool prev_above = dot(v[0], n) - line.p > 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool above = dot(v[i], n) - line.p > 0.0;
    if (above != prev_above) ++count;
    prev_above = above;
  }
  return count;
}

namespace detail {

// Angles in [0, 2pi) where (direction . n(theta)) changes sign.
inline void push_orthogonal_angles(const Point2& dir, std::vector<double>& out) {
  if (norm(dir) <= 0.0) return;
  const double base = std::atan2(dir[1], dir[0]);
  out.push_back(wrap_angle(base + 0.5 * std::numbers::pi));
  out.push_back(wrap_angle(base - 0.5 * std::numbers::pi));
}

// Integrates f over [0, 2pi] by composite Simpson on a grid of step `h`,
// splitting first at the given breakpoints so that every sub-interval is smooth.
template <typename F>
double piecewise_composite_simpson(const F& f, std::vector<double> breaks, double h) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  breaks.push_back(0.0);
  breaks.push_back(two_pi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (b - a <= 0.0) continue;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / h)));
    total += composite_simpson(f, a, b, panels);
  }
  return total;
}

}  // namespace detail

inline constexpr std::size_t kDefaultCroftonPanels = 4096;

/// Length of the chain recovered as half the line-measure integral of the
/// crossing count. For each direction the p-integral is exact (per segment,
/// the length of its projection interval clipped to p > 0); the direction
/// integral is composite Simpson on `panels` panels, refined at each
/// segment's kinks.
inline double crofton_length(const Polyline& curve,
                             std::size_t panels = kDefaultCroftonPanels) {
  if (panels == 0) throw std::invalid_argument("crofton_length: panels must be positive");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(panels);
  const auto& v = curve.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[i + 1];
    auto measure = [&](double theta) {
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const double pa = a[0] * c + a[1] * s;
      const double pb = b[0] * c + b[1] * s;
      return std::max(0.0, std::max(pa, pb)) - std::max(0.0, std::min(pa, pb));
    };
    std::vector<double> breaks;
    detail::push_orthogonal_angles(a, breaks);
    detail::push_orthogonal_angles(b, breaks);
    detail::push_orthogonal_angles(b - a, breaks);
    total += detail::piecewise_composite_simpson(measure, std::move(breaks), h);
  }
  return 0.5 * total;
}

struct MomentResult {
  std::string body;
  int n = 0;
  double value = 0.0;
  double error = 0.0;
};

struct ChordMomentOptions {
  double inner_tol = 1e-9;
  double outer_tol = 1e-9;
  double disk_tol = 1e-13;
  /// Polygons with at most this many vertices get the outer integral split at
  /// every direction where two vertex projections coincide.
  std::size_t max_vertices_for_breakpoints = 64;
};

inline std::string body_label(const ConvexBody2& body) {
  if (body.kind() == ConvexBody2::Kind::unit_disk) return "disk";
  return "polygon(" + std::to_string(body.vertices().size()) + ")";
}

/// I_n: integral of chord length to the n-th power over all lines meeting the body.
inline MomentResult chord_moment(const ConvexBody2& body, int n, ChordMomentOptions opts = {}) {
  if (n < 0 || n > 8) throw std::domain_error("chord_moment: n must be in [0, 8]");
  MomentResult out{body_label(body), n, 0.0, 0.0};
  if (body.kind() == ConvexBody2::Kind::unit_disk) {
    auto integrand = [n](double p) {
      const double s = 1.0 - p * p;
      return std::pow(2.0 * std::sqrt(std::max(0.0, s)), n);
    };
    const auto q = adaptive_simpson(integrand, 0.0, 1.0, {.abs_tol = opts.disk_tol, .max_depth = 50});
    out.value = 2.0 * std::numbers::pi * q.value;
    out.error = 2.0 * std::numbers::pi * q.error;
    return out;
  }

  const auto& verts = body.vertices();
  std::vector<double> proj(verts.size());
  double inner_error = 0.0;  // largest per-direction error of the p-integral

  // p-integral for a fixed direction: l(p) is linear between consecutive
  // vertex projections, so integrate piece by piece.
  auto slice = [&](double theta) {
    const Point2 nrm{std::cos(theta), std::sin(theta)};
    for (std::size_t k = 0; k < verts.size(); ++k) proj[k] = dot(verts[k], nrm);
    std::vector<double> knots;
    knots.reserve(verts.size() + 2);
    const auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
    const double lo = std::max(0.0, *mn);
    const double hi = std::max(0.0, *mx);
    if (hi <= lo) return 0.0;
    knots.push_back(lo);
    for (double s : proj) {
      if (s > lo && s < hi) knots.push_back(s);
    }
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());
    auto power = [&](double p) {
      return std::pow(body.chord_length(LineCoords2{p, theta}), n);
    };
    double sum = 0.0;
    double err = 0.0;
    const double piece_tol = opts.inner_tol / static_cast<double>(knots.size());
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      if (knots[k + 1] <= knots[k]) continue;
      const auto q = adaptive_simpson(power, knots[k], knots[k + 1],
                                      {.abs_tol = piece_tol, .max_depth = 30});
      sum += q.value;
      err += q.error;
    }
    inner_error = std::max(inner_error, err);
    return sum;
  };

  std::vector<double> breaks;
  if (verts.size() <= opts.max_vertices_for_breakpoints) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      detail::push_orthogonal_angles(verts[i], breaks);
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        detail::push_orthogonal_angles(verts[j] - verts[i], breaks);
      }
    }
  }
  breaks.push_back(0.0);
  breaks.push_back(2.0 * std::numbers::pi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double span = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (b - a <= 1e-15) continue;
    const auto q =
        adaptive_simpson(slice, a, b, {.abs_tol = opts.outer_tol * (b - a) / span, .max_depth = 30});
    out.value += q.value;
    out.error += q.error;
  }
  out.error += inner_error * span;
  return out;
}

struct DistanceMoment {
  int n = 0;
  double j = 0.0;           // integral of r^n over ordered point pairs
  double normalized = 0.0;  // E[r^n] = j / A^2
  double error = 0.0;
};

/// J_n = 2 / ((n + 2)(n + 3)) * I_{n+3}.
inline DistanceMoment distance_moment(const ConvexBody2& body, int n,
                                      ChordMomentOptions opts = {}) {
  if (n < 0) throw std::domain_error("distance_moment: n must be >= 0");
  const MomentResult moment = chord_moment(body, n + 3, opts);
  const double factor = 2.0 / static_cast<double>((n + 2) * (n + 3));
  const double area = body.area();
  DistanceMoment out;
  out.n = n;
  out.j = factor * moment.value;
  out.normalized = out.j / (area * area);
  out.error = factor * moment.error;
  return out;
}

}  // namespace geoprob
