// Geometric predicates and measures used by every estimator: simplex volumes,
// orientation-based point location, convex-position tests, affine flats through
// points in normal-offset form, and chord geometry of planar convex bodies.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoprob {

/// Tolerance on orientation determinants and incidence tests. Inputs are O(1).
inline constexpr double kPredicateEps = 1e-12;

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <std::size_t D>
struct Point {
  static_assert(D >= 1 && D <= 4, "points live in dimension 1..4");
  std::array<double, D> x{};

  Point() = default;
  explicit constexpr Point(const std::array<double, D>& coords) : x(coords) {
    for (double c : x) {
      if (!std::isfinite(c)) throw std::domain_error("Point: non-finite coordinate");
    }
  }
  template <typename... T>
    requires(sizeof...(T) == D && (std::is_arithmetic_v<T> && ...))
  constexpr Point(T... c) : Point(std::array<double, D>{static_cast<double>(c)...}) {}

  static constexpr std::size_t dim() { return D; }
  constexpr double operator[](std::size_t i) const { return x[i]; }
  constexpr double& operator[](std::size_t i) { return x[i]; }

  friend constexpr Point operator+(Point a, const Point& b) {
    for (std::size_t i = 0; i < D; ++i) a.x[i] += b.x[i];
    return a;
  }
  friend constexpr Point operator-(Point a, const Point& b) {
    for (std::size_t i = 0; i < D; ++i) a.x[i] -= b.x[i];
    return a;
  }
  friend constexpr Point operator*(double s, Point a) {
    for (double& c : a.x) c *= s;
    return a;
  }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

using Point2 = Point<2>;
using Point3 = Point<3>;
using Point4 = Point<4>;

template <std::size_t D>
constexpr double dot(const Point<D>& a, const Point<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += a.x[i] * b.x[i];
  return s;
}

template <std::size_t D>
double norm(const Point<D>& a) {
  return std::sqrt(dot(a, a));
}

// Twice the signed area of (a, b, c); positive for counter-clockwise order.
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Six times the signed volume of (a, b, c, d).
inline double orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
}

inline double triangle_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * std::abs(orient2d(a, b, c));
}

inline double tetra_volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return std::abs(orient3d(a, b, c, d)) / 6.0;
}

enum class Location { inside, outside, boundary };

inline const char* to_string(Location loc) {
  switch (loc) {
    case Location::inside: return "inside";
    case Location::outside: return "outside";
    case Location::boundary: return "boundary";
  }
  return "?";
}

namespace detail {

// Classifies from orientation values already normalised so that "inside" means
// all strictly positive.
template <std::size_t N>
Location classify_signs(const std::array<double, N>& s) {
  bool on_boundary = false;
  for (double v : s) {
    if (v < -kPredicateEps) return Location::outside;
    if (v <= kPredicateEps) on_boundary = true;
  }
  return on_boundary ? Location::boundary : Location::inside;
}

}  // namespace detail

inline Location point_in_triangle(const Point2& q, const Point2& a, const Point2& b,
                                  const Point2& c) {
  const double whole = orient2d(a, b, c);
  if (0.5 * std::abs(whole) < kPredicateEps) {
    throw DegenerateError("point_in_triangle: degenerate triangle");
  }
  const double sign = whole > 0 ? 1.0 : -1.0;
  return detail::classify_signs<3>(
      {sign * orient2d(a, b, q), sign * orient2d(b, c, q), sign * orient2d(c, a, q)});
}

inline Location point_in_tetra(const Point3& q, const Point3& a, const Point3& b,
                               const Point3& c, const Point3& d) {
  const double whole = orient3d(a, b, c, d);
  if (std::abs(whole) / 6.0 < kPredicateEps) {
    throw DegenerateError("point_in_tetra: degenerate tetrahedron");
  }
  const double sign = whole > 0 ? 1.0 : -1.0;
  // Replace one vertex at a time by q; each keeps the sign of `whole` iff q is on
  // the same side of the opposite face as the replaced vertex.
  return detail::classify_signs<4>({sign * orient3d(q, b, c, d), sign * orient3d(a, q, c, d),
                                    sign * orient3d(a, b, q, d), sign * orient3d(a, b, c, q)});
}

/// Outcome of a convex-position test, keeping degenerate input distinguishable.
enum class Configuration { convex, nonconvex, degenerate };

inline Configuration classify_quadruple(std::span<const Point2, 4> p) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = p[(i + 1) % 4];
    const auto& b = p[(i + 2) % 4];
    const auto& c = p[(i + 3) % 4];
    if (0.5 * std::abs(orient2d(a, b, c)) < kPredicateEps) return Configuration::degenerate;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (point_in_triangle(p[i], p[(i + 1) % 4], p[(i + 2) % 4], p[(i + 3) % 4]) ==
        Location::inside) {
      return Configuration::nonconvex;
    }
  }
  return Configuration::convex;
}

/// Number of points of the quadruple lying strictly inside the triangle of the
/// other three. At most one for points in general position.
inline int count_inside_events(std::span<const Point2, 4> p) {
  int count = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (point_in_triangle(p[i], p[(i + 1) % 4], p[(i + 2) % 4], p[(i + 3) % 4]) ==
        Location::inside) {
      ++count;
    }
  }
  return count;
}

inline Configuration classify_quintuple(std::span<const Point3, 5> p) {
  std::array<std::array<std::size_t, 4>, 5> rest{};
  for (std::size_t i = 0; i < 5; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j != i) rest[i][k++] = j;
    }
  }
  for (const auto& r : rest) {
    if (tetra_volume(p[r[0]], p[r[1]], p[r[2]], p[r[3]]) < kPredicateEps) {
      return Configuration::degenerate;
    }
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& r = rest[i];
    if (point_in_tetra(p[i], p[r[0]], p[r[1]], p[r[2]], p[r[3]]) == Location::inside) {
      return Configuration::nonconvex;
    }
  }
  return Configuration::convex;
}

/// True iff no point lies strictly inside the triangle of the other three.
/// Any collinear triple counts as not in convex position.
inline bool convex_position_4(std::span<const Point2, 4> pts) {
  return classify_quadruple(pts) == Configuration::convex;
}

inline bool convex_position_5_3d(std::span<const Point3, 5> pts) {
  return classify_quintuple(pts) == Configuration::convex;
}

// ---------------------------------------------------------------------------
// Flats in normal-offset form {x : x . normal = p}, p >= 0.

struct LineCoords2 {
  double p = 0.0;
  double theta = 0.0;  // [0, 2pi)

  Point2 normal() const { return Point2{std::cos(theta), std::sin(theta)}; }
  Point2 direction() const { return Point2{-std::sin(theta), std::cos(theta)}; }
  double signed_distance(const Point2& q) const { return dot(q, normal()) - p; }
};

struct PlaneCoords3 {
  double p = 0.0;
  double theta = 0.0;  // [0, 2pi)
  double phi = 0.0;    // [0, pi]

  Point3 normal() const {
    return Point3{std::cos(theta) * std::sin(phi), std::sin(theta) * std::sin(phi),
                  std::cos(phi)};
  }
  double signed_distance(const Point3& q) const { return dot(q, normal()) - p; }
};

// Normal (cos t sin f sin s, sin t sin f sin s, cos f sin s, cos s) for
// t = theta, f = phi, s = psi.
struct HyperplaneCoords4 {
  double p = 0.0;
  double theta = 0.0;  // [0, 2pi)
  double phi = 0.0;    // [0, pi]
  double psi = 0.0;    // [0, pi]

  Point4 normal() const {
    const double sp = std::sin(psi);
    return Point4{std::cos(theta) * std::sin(phi) * sp, std::sin(theta) * std::sin(phi) * sp,
                  std::cos(phi) * sp, std::cos(psi)};
  }
  double signed_distance(const Point4& q) const { return dot(q, normal()) - p; }
};

namespace detail {

inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

inline double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

// Orients a unit normal so that the offset is non-negative; flats through the
// origin take the normal whose first non-negligible component is positive.
template <std::size_t D>
double canonicalize(Point<D>& n, const Point<D>& on_flat) {
  double p = dot(n, on_flat);
  if (std::abs(p) <= kPredicateEps) {
    for (double c : n.x) {
      if (std::abs(c) > kPredicateEps) {
        if (c < 0) n = -1.0 * n;
        break;
      }
    }
    return 0.0;
  }
  if (p < 0) {
    n = -1.0 * n;
    p = -p;
  }
  return p;
}

inline LineCoords2 line_coords(const Point2& n, double p) {
  return {p, wrap_angle(std::atan2(n[1], n[0]))};
}

inline PlaneCoords3 plane_coords(const Point3& n, double p) {
  return {p, wrap_angle(std::atan2(n[1], n[0])), clamped_acos(n[2])};
}

inline HyperplaneCoords4 hyperplane_coords(const Point4& n, double p) {
  const double psi = clamped_acos(n[3]);
  const double s = std::hypot(n[0], n[1], n[2]);
  const double phi = s > 0 ? clamped_acos(n[2] / s) : 0.0;
  return {p, wrap_angle(std::atan2(n[1], n[0])), phi, psi};
}

}  // namespace detail

inline LineCoords2 line_from_points(const Point2& a, const Point2& b) {
  const Point2 d = b - a;
  const double len = norm(d);
  if (len <= kPredicateEps) throw DegenerateError("line_from_points: coincident points");
  Point2 n{-d[1] / len, d[0] / len};
  const double p = detail::canonicalize(n, a);
  return detail::line_coords(n, p);
}

/// Offset |p| of the line through a and b, without computing angles.
inline double line_offset(const Point2& a, const Point2& b) {
  const double len = norm(b - a);
  if (len <= kPredicateEps) throw DegenerateError("line_offset: coincident points");
  return std::abs(orient2d(Point2{0.0, 0.0}, a, b)) / len;
}

namespace detail {

inline Point3 cross(const Point3& u, const Point3& v) {
  return Point3{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline double det3(double a, double b, double c, double d, double e, double f, double g, double h,
                   double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Vector orthogonal to u, v, w with length equal to the volume of the
// parallelotope they span.
inline Point4 cross4(const Point4& u, const Point4& v, const Point4& w) {
  return Point4{det3(u[1], u[2], u[3], v[1], v[2], v[3], w[1], w[2], w[3]),
                -det3(u[0], u[2], u[3], v[0], v[2], v[3], w[0], w[2], w[3]),
                det3(u[0], u[1], u[3], v[0], v[1], v[3], w[0], w[1], w[3]),
                -det3(u[0], u[1], u[2], v[0], v[1], v[2], w[0], w[1], w[2])};
}

}  // namespace detail

/// Plane through three points. Throws DegenerateError if they are collinear.
inline PlaneCoords3 flat_from_points(std::span<const Point3, 3> pts) {
  Point3 n = detail::cross(pts[1] - pts[0], pts[2] - pts[0]);
  const double len = norm(n);
  if (len / 2.0 <= kPredicateEps) throw DegenerateError("flat_from_points: collinear points");
  n = (1.0 / len) * n;
  const double p = detail::canonicalize(n, pts[0]);
  return detail::plane_coords(n, p);
}

/// Hyperplane through four points of R^4. Throws DegenerateError if they are
/// affinely dependent.
inline HyperplaneCoords4 flat_from_points(std::span<const Point4, 4> pts) {
  Point4 n = detail::cross4(pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0]);
  const double len = norm(n);
  if (len / 6.0 <= kPredicateEps) throw DegenerateError("flat_from_points: coplanar points");
  n = (1.0 / len) * n;
  const double p = detail::canonicalize(n, pts[0]);
  return detail::hyperplane_coords(n, p);
}

// ---------------------------------------------------------------------------
// Disk chord geometry.

/// Area of the smaller circular segment of the unit disk cut off by a chord at
/// distance h from the centre.
inline double segment_area(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw std::domain_error("segment_area: h outside [0, 1]");
  return std::numbers::pi / 2.0 - h * std::sqrt(1.0 - h * h) - std::asin(h);
}

class ConvexBody2 {
 public:
  enum class Kind { unit_disk, polygon };

  static ConvexBody2 unit_disk() { return ConvexBody2(Kind::unit_disk, {}); }

  /// Strictly convex polygon with counter-clockwise vertices.
  static ConvexBody2 polygon(std::vector<Point2> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw std::invalid_argument("ConvexBody2: polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
      const double turn = orient2d(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
      if (turn <= kPredicateEps) {
        throw std::invalid_argument(
            "ConvexBody2: polygon must be strictly convex and counter-clockwise");
      }
    }
    // A locally convex CCW chain can still wind more than once.
    double winding = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 e0 = vertices[(i + 1) % n] - vertices[i];
      const Point2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
      winding += std::atan2(e0[0] * e1[1] - e0[1] * e1[0], dot(e0, e1));
    }
    if (std::abs(winding - 2.0 * std::numbers::pi) > 1e-6) {
      throw std::invalid_argument("ConvexBody2: polygon winds more than once");
    }
    return ConvexBody2(Kind::polygon, std::move(vertices));
  }

  static ConvexBody2 regular_polygon(std::size_t sides, double radius = 1.0) {
    std::vector<Point2> v;
    v.reserve(sides);
    for (std::size_t k = 0; k < sides; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sides);
      v.emplace_back(radius * std::cos(a), radius * std::sin(a));
    }
    return polygon(std::move(v));
  }

  /// [0,1]^2.
  static ConvexBody2 unit_square() {
    return polygon({Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{1.0, 1.0}, Point2{0.0, 1.0}});
  }

  Kind kind() const { return kind_; }
  const std::vector<Point2>& vertices() const { return vertices_; }

  double area() const {
    if (kind_ == Kind::unit_disk) return std::numbers::pi;
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const auto& a = vertices_[i];
      const auto& b = vertices_[(i + 1) % vertices_.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * twice;
  }

  double perimeter() const {
    if (kind_ == Kind::unit_disk) return 2.0 * std::numbers::pi;
    double len = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      len += norm(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
    }
    return len;
  }

  bool contains(const Point2& q) const {
    if (kind_ == Kind::unit_disk) return dot(q, q) <= 1.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (orient2d(vertices_[i], vertices_[(i + 1) % vertices_.size()], q) < -kPredicateEps) {
        return false;
      }
    }
    return true;
  }

  /// Support function max_{x in K} x . (cos theta, sin theta).
  double support(double theta) const {
    if (kind_ == Kind::unit_disk) return 1.0;
    const Point2 n{std::cos(theta), std::sin(theta)};
    double h = -INFINITY;
    for (const auto& v : vertices_) h = std::max(h, dot(v, n));
    return h;
  }

  double bounding_radius() const {
    if (kind_ == Kind::unit_disk) return 1.0;
    double r = 0.0;
    for (const auto& v : vertices_) r = std::max(r, norm(v));
    return r;
  }

  /// Length of the intersection of the body with the line.
  double chord_length(const LineCoords2& line) const {
    if (kind_ == Kind::unit_disk) {
      const double p = std::abs(line.p);
      return p < 1.0 ? 2.0 * std::sqrt(1.0 - p * p) : 0.0;
    }
    // Clip the parametric segment base + t*dir, t in [-L, L], against each edge
    // half-plane orient2d(v_i, v_{i+1}, x) >= 0.
    const Point2 n = line.normal();
    const Point2 dir = line.direction();
    const Point2 base = line.p * n;
    const double reach = bounding_radius() + std::abs(line.p) + 1.0;
    double lo = -reach;
    double hi = reach;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point2& a = vertices_[i];
      const Point2 e = vertices_[(i + 1) % m] - a;
      const Point2 r = base - a;
      const double f0 = e[0] * r[1] - e[1] * r[0];
      const double f1 = e[0] * dir[1] - e[1] * dir[0];
      if (f1 == 0.0) {
        if (f0 < 0.0) return 0.0;
        continue;
      }
      const double t = -f0 / f1;
      if (f1 > 0.0) {
        lo = std::max(lo, t);
      } else {
        hi = std::min(hi, t);
      }
      if (lo >= hi) return 0.0;
    }
    return hi - lo;
  }

 private:
  ConvexBody2(Kind kind, std::vector<Point2> vertices)
      : kind_(kind), vertices_(std::move(vertices)) {}

  Kind kind_;
  std::vector<Point2> vertices_;
};

inline double chord_length(const ConvexBody2& body, const LineCoords2& line) {
  return body.chord_length(line);
}

}  // namespace geoprob

namespace geoprob {

/// Convex hull (Andrew's monotone chain), counter-clockwise, collinear points dropped.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && orient2d(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace geoprob
