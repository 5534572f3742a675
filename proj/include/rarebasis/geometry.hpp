#pragma once

// Planar convex geometry for standard rectangles [0,L]x[0,l] under rotation
// about the origin and translation: polygon clipping, exact union areas by a
// vertical sweep, and exact disk/polygon intersection areas.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rarebasis {

/// Relative tolerance used for disjointness and degeneracy decisions.
inline constexpr double kGeometryTolerance = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Counterclockwise rotation about the origin.
inline Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// The standard rectangle [0,L] x [0,l].
class StandardRect {
 public:
  StandardRect(double length, double height) : length_(length), height_(height) {
    if (!(std::isfinite(length) && length > 0.0) || !(std::isfinite(height) && height > 0.0)) {
      throw std::invalid_argument("StandardRect: length and height must be finite and positive");
    }
  }

  double length() const { return length_; }
  double height() const { return height_; }
  double area() const { return length_ * height_; }
  double aspect() const { return length_ / height_; }
  double diameter() const { return std::hypot(length_, height_); }

  /// True when 2l <= L, the shape required by the construction.
  bool is_construction_grade() const { return 2.0 * height_ <= length_; }

  std::array<Point2, 4> corners() const {
    return {Point2{0.0, 0.0}, Point2{length_, 0.0}, Point2{length_, height_}, Point2{0.0, height_}};
  }

 private:
  double length_;
  double height_;
};

/// Right half [L/2, L] x [0, l] of a standard rectangle.
struct HalfRect {
  StandardRect parent;

  double area() const { return 0.5 * parent.area(); }
  std::array<Point2, 4> corners() const {
    const double l = parent.length();
    const double h = parent.height();
    return {Point2{0.5 * l, 0.0}, Point2{l, 0.0}, Point2{l, h}, Point2{0.5 * l, h}};
  }
};

/// Rotation about the origin followed by a translation.
class Placement {
 public:
  Placement() = default;
  explicit Placement(double angle, Point2 translation = {}) : angle_(normalize(angle)), translation_(translation) {
    if (!std::isfinite(translation.x) || !std::isfinite(translation.y)) {
      throw std::invalid_argument("Placement: translation must be finite");
    }
  }

  double angle() const { return angle_; }
  Point2 translation() const { return translation_; }
  Point2 apply(Point2 p) const { return rotate(p, angle_) + translation_; }

  static double normalize(double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("Placement: angle must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
  }

 private:
  double angle_ = 0.0;
  Point2 translation_{};
};

namespace detail {

inline double signed_area(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * twice;
}

}  // namespace detail

/// Strictly convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
    double scale = 0.0;
    for (const auto& v : vertices_) {
      if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
        throw std::invalid_argument("ConvexPolygon: vertices must be finite");
      }
      scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    }
    area_ = detail::signed_area(vertices_);
    if (!(area_ > 0.0)) throw std::invalid_argument("ConvexPolygon: vertices must be counterclockwise with positive area");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 e1 = vertices_[(i + 1) % n] - vertices_[i];
      const Point2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
      if (cross(e1, e2) < -kGeometryTolerance * norm(e1) * norm(e2)) {
        throw std::invalid_argument("ConvexPolygon: vertex list is not convex");
      }
    }
  }

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const { return area_; }

  bool contains(Point2 p) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) < 0.0) return false;
    }
    return true;
  }

  std::pair<Point2, Point2> bounding_box() const {
    Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point2 hi{-lo.x, -lo.y};
    for (const auto& v : vertices_) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    return {lo, hi};
  }

 private:
  std::vector<Point2> vertices_;
  double area_ = 0.0;
};

struct Disk {
  Point2 center;
  double radius;

  Disk(Point2 c, double r) : center(c), radius(r) {
    if (!(std::isfinite(r) && r > 0.0)) throw std::invalid_argument("Disk: radius must be finite and positive");
  }
  double area() const { return std::numbers::pi * radius * radius; }
};

enum class AreaMethod { exact, monte_carlo };

struct AreaEstimate {
  double value = 0.0;
  AreaMethod method = AreaMethod::exact;
  double std_error = 0.0;

  static AreaEstimate exact(double v) { return {std::max(v, 0.0), AreaMethod::exact, 0.0}; }
};

struct MonteCarlo {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline ConvexPolygon place_rect(const StandardRect& rect, const Placement& placement) {
  const auto c = rect.corners();
  std::vector<Point2> v;
  v.reserve(4);
  for (const auto& p : c) v.push_back(placement.apply(p));
  return ConvexPolygon(std::move(v));
}

inline ConvexPolygon place_half(const HalfRect& half, const Placement& placement) {
  const auto c = half.corners();
  std::vector<Point2> v;
  v.reserve(4);
  for (const auto& p : c) v.push_back(placement.apply(p));
  return ConvexPolygon(std::move(v));
}

namespace detail {

// Sutherland-Hodgman clip of a convex subject against a convex CCW clipper.
inline std::vector<Point2> clip_convex(std::span<const Point2> subject, std::span<const Point2> clipper) {
  std::vector<Point2> out(subject.begin(), subject.end());
  std::vector<Point2> in;
  const std::size_t m = clipper.size();
  for (std::size_t e = 0; e < m && !out.empty(); ++e) {
    const Point2 a = clipper[e];
    const Point2 b = clipper[(e + 1) % m];
    const Point2 dir = b - a;
    in.swap(out);
    out.clear();
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 p = in[i];
      const Point2 q = in[(i + 1) % n];
      const double sp = cross(dir, p - a);
      const double sq = cross(dir, q - a);
      if (sp >= 0.0) out.push_back(p);
      if ((sp >= 0.0) != (sq >= 0.0)) {
        const double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  return out;
}

inline bool lexicographically_less(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto va = a.vertices();
  const auto vb = b.vertices();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end(), [](Point2 p, Point2 q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
}

// Vertical extent of a convex polygon at abscissa x, assuming min_x < x < max_x.
inline std::pair<double, double> vertical_chord(std::span<const Point2> v, double x) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = v[i];
    const Point2 q = v[(i + 1) % n];
    if (p.x == q.x) continue;
    if ((x < p.x) == (x < q.x)) continue;
    const double y = p.y + (q.y - p.y) * ((x - p.x) / (q.x - p.x));
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return {lo, hi};
}

// Signed area of disk(origin, r) intersected with triangle (origin, a, b).
inline double disk_triangle_signed_area(Point2 a, Point2 b, double r) {
  const auto sector = [r](Point2 p, Point2 q) { return 0.5 * r * r * std::atan2(cross(p, q), dot(p, q)); };
  const Point2 d = b - a;
  const double qa = dot(d, d);
  if (qa == 0.0) return 0.0;
  const double qb = dot(a, d);
  const double qc = dot(a, a) - r * r;
  const double disc = qb * qb - qa * qc;
  if (disc <= 0.0) return sector(a, b);
  const double s = std::sqrt(disc);
  const double t1 = (-qb - s) / qa;
  const double t2 = (-qb + s) / qa;
  if (t2 <= 0.0 || t1 >= 1.0) return sector(a, b);
  const Point2 p1 = a + std::max(t1, 0.0) * d;
  const Point2 p2 = a + std::min(t2, 1.0) * d;
  return sector(a, p1) + 0.5 * cross(p1, p2) + sector(p2, b);
}

inline double disk_polygon_area(Point2 center, double radius, std::span<const Point2> v) {
  double total = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    total += disk_triangle_signed_area(v[i] - center, v[(i + 1) % n] - center, radius);
  }
  return std::max(total, 0.0);
}

}  // namespace detail

/// Area of P intersected with Q; symmetric in its arguments bit for bit.
inline AreaEstimate intersection_area(const ConvexPolygon& p, const ConvexPolygon& q) {
  const bool swap = detail::lexicographically_less(q, p);
  const ConvexPolygon& subject = swap ? q : p;
  const ConvexPolygon& clipper = swap ? p : q;
  const auto [plo, phi] = subject.bounding_box();
  const auto [qlo, qhi] = clipper.bounding_box();
  if (phi.x < qlo.x || qhi.x < plo.x || phi.y < qlo.y || qhi.y < plo.y) return AreaEstimate::exact(0.0);
  const auto clipped = detail::clip_convex(subject.vertices(), clipper.vertices());
  const double a = detail::signed_area(clipped);
  return AreaEstimate::exact(std::clamp(a, 0.0, std::min(p.area(), q.area())));
}

/// Exact union area by a vertical sweep.
///
/// Slab boundaries are all vertex abscissae and all abscissae where edges of
/// different polygons cross. Inside a slab no two boundary segments cross, so
/// the covered length is affine in x and the midpoint rule is exact.
inline AreaEstimate union_area_exact(std::span<const ConvexPolygon> polys) {
  if (polys.empty()) throw std::invalid_argument("union_area: empty polygon list");
  if (polys.size() == 1) return AreaEstimate::exact(polys.front().area());

  std::vector<double> xs;
  for (const auto& p : polys)
    for (const auto& v : p.vertices()) xs.push_back(v.x);

  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto vi = polys[i].vertices();
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      const auto vj = polys[j].vertices();
      for (std::size_t a = 0; a < vi.size(); ++a) {
        const Point2 p0 = vi[a];
        const Point2 p1 = vi[(a + 1) % vi.size()];
        const Point2 r = p1 - p0;
        for (std::size_t b = 0; b < vj.size(); ++b) {
          const Point2 q0 = vj[b];
          const Point2 q1 = vj[(b + 1) % vj.size()];
          const Point2 s = q1 - q0;
          const double denom = cross(r, s);
          if (denom == 0.0) continue;
          const double t = cross(q0 - p0, s) / denom;
          const double u = cross(q0 - p0, r) / denom;
          if (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0) xs.push_back(p0.x + t * r.x);
        }
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::pair<double, double>> xranges;
  xranges.reserve(polys.size());
  for (const auto& p : polys) {
    const auto [lo, hi] = p.bounding_box();
    xranges.emplace_back(lo.x, hi.x);
  }

  std::vector<std::pair<double, double>> spans;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double width = xs[s + 1] - xs[s];
    if (width <= 0.0) continue;
    const double xm = 0.5 * (xs[s] + xs[s + 1]);
    spans.clear();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      if (xm <= xranges[i].first || xm >= xranges[i].second) continue;
      spans.push_back(detail::vertical_chord(polys[i].vertices(), xm));
    }
    if (spans.empty()) continue;
    std::sort(spans.begin(), spans.end());
    double covered = 0.0;
    double cur_lo = spans.front().first;
    double cur_hi = spans.front().second;
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first > cur_hi) {
        covered += cur_hi - cur_lo;
        cur_lo = spans[i].first;
        cur_hi = spans[i].second;
      } else {
        cur_hi = std::max(cur_hi, spans[i].second);
      }
    }
    covered += cur_hi - cur_lo;
    total += width * covered;
  }
  return AreaEstimate::exact(total);
}

/// Seeded Monte Carlo union area over the joint bounding box.
inline AreaEstimate union_area_monte_carlo(std::span<const ConvexPolygon> polys, const MonteCarlo& mc) {
  if (polys.empty()) throw std::invalid_argument("union_area: empty polygon list");
  if (mc.samples < 10'000) throw std::invalid_argument("union_area: Monte Carlo needs at least 1e4 samples");
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  std::vector<std::pair<Point2, Point2>> boxes;
  boxes.reserve(polys.size());
  for (const auto& p : polys) {
    const auto b = p.bounding_box();
    boxes.push_back(b);
    lo = {std::min(lo.x, b.first.x), std::min(lo.y, b.first.y)};
    hi = {std::max(hi.x, b.second.x), std::max(hi.y, b.second.y)};
  }
  const Point2 ext = hi - lo;
  const double box_area = ext.x * ext.y;
  std::mt19937_64 rng(mc.seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < mc.samples; ++i) {
    const Point2 pt{lo.x + ext.x * unit_uniform(rng), lo.y + ext.y * unit_uniform(rng)};
    for (std::size_t j = 0; j < polys.size(); ++j) {
      const auto& [blo, bhi] = boxes[j];
      if (pt.x < blo.x || pt.x > bhi.x || pt.y < blo.y || pt.y > bhi.y) continue;
      if (polys[j].contains(pt)) {
        ++hits;
        break;
      }
    }
  }
  const double n = static_cast<double>(mc.samples);
  const double frac = static_cast<double>(hits) / n;
  return {box_area * frac, AreaMethod::monte_carlo, box_area * std::sqrt(frac * (1.0 - frac) / n)};
}

inline AreaEstimate union_area(std::span<const ConvexPolygon> polys) { return union_area_exact(polys); }
inline AreaEstimate union_area(std::span<const ConvexPolygon> polys, const MonteCarlo& mc) {
  return union_area_monte_carlo(polys, mc);
}

/// Exact area of a disk intersected with a convex polygon: straight pieces
/// inside the circle plus circular sectors for the arcs.
inline AreaEstimate disk_polygon_area(const Disk& disk, const ConvexPolygon& poly) {
  const auto [lo, hi] = poly.bounding_box();
  const Point2 c = disk.center;
  const double r = disk.radius;
  if (c.x + r < lo.x || c.x - r > hi.x || c.y + r < lo.y || c.y - r > hi.y) return AreaEstimate::exact(0.0);
  const double a = detail::disk_polygon_area(c, r, poly.vertices());
  return AreaEstimate::exact(std::min(a, std::min(disk.area(), poly.area())));
}

/// Smallest tan(theta - vartheta) for which r_vartheta Q+ and r_theta Q+ are
/// guaranteed disjoint: 1 / sqrt((L/l)^2 / 4 - 1).
inline double disjointness_threshold(const StandardRect& rect) {
  if (!(2.0 * rect.height() < rect.length())) {
    throw std::domain_error("disjointness_threshold: degenerate aspect, need 2l < L");
  }
  const double ratio = rect.aspect();
  return 1.0 / std::sqrt(0.25 * ratio * ratio - 1.0);
}

/// Sufficient disjointness test for the rotated right halves. A false result
/// says nothing about overlap.
inline bool lemma1_disjoint(const StandardRect& rect, double vartheta, double theta) {
  if (!(0.0 <= vartheta && vartheta < theta && theta < 0.5 * std::numbers::pi)) {
    throw std::invalid_argument("lemma1_disjoint: need 0 <= vartheta < theta < pi/2");
  }
  return std::tan(theta - vartheta) >= disjointness_threshold(rect) * (1.0 - kGeometryTolerance);
}

/// Overlap area of r_vartheta Q+ and r_theta Q+.
inline double half_rect_overlap(const StandardRect& rect, double vartheta, double theta) {
  const HalfRect half{rect};
  return intersection_area(place_half(half, Placement(vartheta)), place_half(half, Placement(theta))).value;
}

}  // namespace rarebasis
