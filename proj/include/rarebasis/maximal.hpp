#pragma once

// Lower bounds for the translation maximal operators of a family of standard
// rectangles, optionally rotated, applied to scaled disk indicators; Orlicz
// integrals of such functions; level-set measurements.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rarebasis/construction.hpp"
#include "rarebasis/geometry.hpp"

namespace rarebasis {

// ---------------------------------------------------------------------------
// Orlicz functions

class OrliczFunction {
 public:
  struct Power {
    double p;
  };
  struct LogLike {
    double gamma;  // t (1 + log+ t)^gamma
  };
  struct Table {
    std::vector<std::pair<double, double>> points;  // piecewise linear, extended by the last slope
  };

  static OrliczFunction power(double p) {
    if (!(p >= 1.0 && std::isfinite(p))) throw std::invalid_argument("OrliczFunction: power needs p >= 1");
    return OrliczFunction(Power{p});
  }
  static OrliczFunction loglike(double gamma) {
    if (!(gamma >= 0.0 && std::isfinite(gamma))) throw std::invalid_argument("OrliczFunction: loglike needs gamma >= 0");
    return OrliczFunction(LogLike{gamma});
  }
  /// t (1 + log+ t), the L log L function.
  static OrliczFunction phi0() { return loglike(1.0); }

  static OrliczFunction table(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("OrliczFunction: table needs at least two points");
    if (points.front().first != 0.0 || points.front().second != 0.0) {
      throw std::invalid_argument("OrliczFunction: table must start at (0, 0)");
    }
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double dt = points[i].first - points[i - 1].first;
      if (!(dt > 0.0)) throw std::invalid_argument("OrliczFunction: table abscissae must increase");
      const double slope = (points[i].second - points[i - 1].second) / dt;
      if (slope < prev_slope) throw std::invalid_argument("OrliczFunction: table is not convex and nondecreasing");
      prev_slope = slope;
    }
    return OrliczFunction(Table{std::move(points)});
  }

  /// Accepts "power:p" and "loglike:g".
  static OrliczFunction parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("OrliczFunction: expected kind:value, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw std::invalid_argument("OrliczFunction: bad parameter in '" + spec + "'");
    }
    if (kind == "power") return power(v);
    if (kind == "loglike") return loglike(v);
    throw std::invalid_argument("OrliczFunction: unknown kind '" + kind + "'");
  }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (const auto* p = std::get_if<Power>(&kind_)) return std::pow(t, p->p);
    if (const auto* g = std::get_if<LogLike>(&kind_)) {
      const double lp = t > 1.0 ? std::log(t) : 0.0;
      return g->gamma == 0.0 ? t : t * std::pow(1.0 + lp, g->gamma);
    }
    const auto& pts = std::get<Table>(kind_).points;
    auto it = std::upper_bound(pts.begin(), pts.end(), t, [](double v, const auto& pt) { return v < pt.first; });
    if (it == pts.end()) it = pts.end() - 1;
    const auto& [t1, v1] = *it;
    const auto& [t0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }

  /// Numerical convexity and monotonicity on `n` points of [0, 10 peak].
  bool validate_on_grid(double peak, std::size_t n = 256) const {
    if (!(peak > 0.0) || n < 3) return false;
    const double h = 10.0 * peak / static_cast<double>(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (*this)(h * static_cast<double>(i));
    if (v[0] != 0.0) return false;
    const double scale = std::max(1.0, std::abs(v.back()));
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] < v[i - 1]) return false;
      if (i + 1 < n && v[i - 1] - 2.0 * v[i] + v[i + 1] < -1e-12 * scale) return false;
    }
    return true;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (const auto* p = std::get_if<Power>(&kind_)) {
      os << "power:" << p->p;
    } else if (const auto* g = std::get_if<LogLike>(&kind_)) {
      os << "loglike:" << g->gamma;
    } else {
      os << "table:" << std::get<Table>(kind_).points.size();
    }
    return os.str();
  }

 private:
  explicit OrliczFunction(std::variant<Power, LogLike, Table> k) : kind_(std::move(k)) {}
  std::variant<Power, LogLike, Table> kind_;
};

// ---------------------------------------------------------------------------
// Test functions

/// f = value * indicator of a disk.
struct CounterexampleFunction {
  double value;
  Disk support;

  CounterexampleFunction(double v, Disk d) : value(v), support(d) {
    if (!(v > 0.0 && std::isfinite(v))) throw std::invalid_argument("CounterexampleFunction: value must be positive");
  }
  double l1_norm() const { return value * support.area(); }
  double at(Point2 p) const { return norm(p - support.center) <= support.radius ? value : 0.0; }
  CounterexampleFunction scaled(double s) const { return CounterexampleFunction(value * s, support); }
};

/// Integral of Phi(f) over the plane: |D| Phi(c).
inline double orlicz_integral(const OrliczFunction& phi, const CounterexampleFunction& f) {
  return f.support.area() * phi(f.value);
}

/// f_k = lambda^{-k} / kappa' on B(0, l_k), in the level's normalized frame.
inline CounterexampleFunction lacunary_fk(const LevelConstruction& level, const ConstructionConstants& consts) {
  if (level.k < 1) throw std::invalid_argument("lacunary_fk: levels start at 1");
  return CounterexampleFunction(std::pow(consts.lambda, -level.k) / consts.kappa_prime,
                                Disk({0.0, 0.0}, 1.0 / level.aspect));
}

/// f_k = |Q_k| indicator(B(0, l_k)) / |B(0, l_k)|, normalized frame; ||f_k||_1 = |Q_k|.
inline CounterexampleFunction remark_fk(const LevelConstruction& level) {
  const auto q = level.normalized();
  const Disk disk({0.0, 0.0}, q.height());
  return CounterexampleFunction(q.area() / disk.area(), disk);
}

// ---------------------------------------------------------------------------
// Maximal operator lower bounds

enum class TranslationSearch {
  none,            // certificates only
  grid,            // lattice of anchor points inside the placed rectangle
  closest_center,  // exact optimum for disk supports, see maximal_lower
};

struct GridSearch {
  double step_fraction = 0.125;           // step = fraction * shape height
  double window_radius_multiplier = 1.0;  // centers within multiplier * (diam + r) of x
  std::size_t max_nodes_per_axis = 2048;  // coarsens the step beyond this
};

struct Certificate {
  std::size_t shape = 0;
  Placement placement;
};

struct MaximalConfig {
  std::vector<StandardRect> shapes;
  std::vector<double> rotations;  // empty: axis-parallel only
  TranslationSearch search = TranslationSearch::grid;
  GridSearch grid;
  std::vector<Certificate> certificates;

  void validate() const {
    if (!(grid.step_fraction > 0.0 && grid.step_fraction <= 1.0)) {
      throw std::invalid_argument("MaximalConfig: step fraction must lie in (0, 1]");
    }
    if (!(grid.window_radius_multiplier >= 1.0)) {
      throw std::invalid_argument("MaximalConfig: window radius multiplier must be at least 1");
    }
    for (const auto& c : certificates) {
      if (c.shape >= shapes.size()) throw std::invalid_argument("MaximalConfig: certificate names an unknown shape");
    }
  }
};

/// Family members rescaled into level k's normalized frame (L_k = 1). Members
/// whose rescaled sides leave [min_side, 1/min_side] are omitted; dropping
/// shapes only weakens a lower bound.
inline std::vector<StandardRect> frame_shapes(const NestedFamily& family, int k, double min_side = 1e-12) {
  const double ref = family.level(k).log_length;
  std::vector<StandardRect> out;
  const double lo = std::log(min_side);
  for (const auto& lv : family.levels) {
    const double ll = lv.log_length - ref;
    const double lh = lv.log_height - ref;
    if (lh < lo || ll > -lo) continue;
    out.emplace_back(std::exp(ll), std::exp(lh));
  }
  return out;
}

/// Config for the rotated family at level k: all frame shapes, the level's
/// angles as rotations, and the corner certificates r_theta Q_k.
inline MaximalConfig rotated_config(const NestedFamily& family, int k, TranslationSearch search) {
  MaximalConfig cfg;
  cfg.shapes = frame_shapes(family, k);
  const auto& level = family.level(k);
  cfg.rotations = level.angles;
  cfg.search = search;
  const StandardRect q = level.normalized();
  std::size_t idx = cfg.shapes.size();
  for (std::size_t i = 0; i < cfg.shapes.size(); ++i) {
    if (std::abs(cfg.shapes[i].length() - 1.0) < 1e-12 &&
        std::abs(cfg.shapes[i].height() / q.height() - 1.0) < 1e-12) {
      idx = i;
    }
  }
  if (idx == cfg.shapes.size()) {
    cfg.shapes.push_back(q);
  }
  for (double a : level.angles) cfg.certificates.push_back({idx, Placement(a)});
  return cfg;
}

/// Certificates-only config holding Q_k and one corner placement per angle.
inline MaximalConfig certificate_config(const LevelConstruction& level) {
  MaximalConfig cfg;
  cfg.shapes = {level.normalized()};
  cfg.rotations = level.angles;
  cfg.search = TranslationSearch::none;
  for (double a : level.angles) cfg.certificates.push_back({0, Placement(a)});
  return cfg;
}

namespace detail {

// |disk cap local rect| / |rect| for an axis-aligned rect given by its center.
inline double rect_fraction(Point2 rect_center, double length, double height, Point2 disk_center, double radius) {
  const double hx = 0.5 * length;
  const double hy = 0.5 * height;
  const double dx = std::max(std::abs(disk_center.x - rect_center.x) - hx, 0.0);
  const double dy = std::max(std::abs(disk_center.y - rect_center.y) - hy, 0.0);
  if (dx * dx + dy * dy >= radius * radius) return 0.0;
  const std::array<Point2, 4> v{Point2{rect_center.x - hx, rect_center.y - hy},
                                Point2{rect_center.x + hx, rect_center.y - hy},
                                Point2{rect_center.x + hx, rect_center.y + hy},
                                Point2{rect_center.x - hx, rect_center.y + hy}};
  const double a = detail::disk_polygon_area(disk_center, radius, v);
  return std::min(a / (length * height), 1.0);
}

inline std::vector<double> lattice(double lo, double hi, double extent, double step) {
  // nodes i * step in [max(lo, 0), min(hi, extent)], plus the far end when in range
  std::vector<double> out;
  const double a = std::max(lo, 0.0);
  const double b = std::min(hi, extent);
  if (a > b) return out;
  const auto first = static_cast<long long>(std::ceil(a / step));
  const auto last = static_cast<long long>(std::floor(b / step));
  for (long long i = first; i <= last; ++i) {
    const double u = static_cast<double>(i) * step;
    if (u <= extent) out.push_back(u);
  }
  if (extent <= b && (out.empty() || out.back() < extent)) out.push_back(extent);
  return out;
}

}  // namespace detail

/// Largest average of f over the enumerated placements containing x; always
/// at most the true maximal function.
///
/// In the closest-center mode the supremum over all translations of a given
/// (rotated) rectangle is computed exactly: the overlap with a disk, as a
/// function of the rectangle's center expressed in the rectangle's frame, is
/// log-concave and even in each coordinate about the disk center, so over the
/// box of admissible centers it peaks at the coordinate-wise clamp of the
/// disk center.
inline double maximal_lower(Point2 x, const CounterexampleFunction& f, const MaximalConfig& cfg) {
  const Point2 dc = f.support.center;
  const double r = f.support.radius;
  double best = 0.0;

  for (const auto& cert : cfg.certificates) {
    const auto poly = place_rect(cfg.shapes[cert.shape], cert.placement);
    if (!poly.contains(x)) continue;
    best = std::max(best, disk_polygon_area(f.support, poly).value / cfg.shapes[cert.shape].area());
  }

  if (cfg.search != TranslationSearch::none) {
    static const std::vector<double> axis_only{0.0};
    const auto& rots = cfg.rotations.empty() ? axis_only : cfg.rotations;
    for (const auto& shape : cfg.shapes) {
      const double len = shape.length();
      const double hgt = shape.height();
      for (double theta : rots) {
        // rectangle frame: rotate by -theta so the shape is axis-aligned
        const Point2 xl = rotate(x, -theta);
        const Point2 dl = rotate(dc, -theta);
        if (cfg.search == TranslationSearch::closest_center) {
          const Point2 center{std::clamp(dl.x, xl.x - 0.5 * len, xl.x + 0.5 * len),
                              std::clamp(dl.y, xl.y - 0.5 * hgt, xl.y + 0.5 * hgt)};
          best = std::max(best, detail::rect_fraction(center, len, hgt, dl, r));
          continue;
        }
        // grid: anchor p in [0,L]x[0,l]; the rectangle's lower-left corner is xl - p
        double step = cfg.grid.step_fraction * hgt;
        const double span_u = std::min(len, 2.0 * r + len);
        if (span_u / step > static_cast<double>(cfg.grid.max_nodes_per_axis)) {
          step = span_u / static_cast<double>(cfg.grid.max_nodes_per_axis);
        }
        const double window = cfg.grid.window_radius_multiplier * (shape.diameter() + r);
        const auto us = detail::lattice(xl.x - dl.x - r, xl.x - dl.x + len + r, len, step);
        const auto vs = detail::lattice(xl.y - dl.y - r, xl.y - dl.y + hgt + r, hgt, step);
        for (double u : us) {
          for (double v : vs) {
            const Point2 center{xl.x - u + 0.5 * len, xl.y - v + 0.5 * hgt};
            if (norm(center - xl) > window) continue;
            best = std::max(best, detail::rect_fraction(center, len, hgt, dl, r));
          }
        }
      }
    }
  }
  return f.value * best;
}

// ---------------------------------------------------------------------------
// Level sets

enum class LevelSetMode { witness_exact, pixel_certified };

struct LevelSetEstimate {
  double threshold = 0.0;
  double measure = 0.0;
  LevelSetMode mode = LevelSetMode::witness_exact;
  std::size_t resolution = 0;  // pixels per axis in pixel mode
};

/// Relative slack allowed when certifying M f >= alpha at a sample point.
inline constexpr double kCertificationTolerance = 1e-9;

class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& what, Point2 point, double value, double threshold)
      : std::runtime_error(what), point_(point), value_(value), threshold_(threshold) {}
  Point2 point() const { return point_; }
  double value() const { return value_; }
  double threshold() const { return threshold_; }

 private:
  Point2 point_;
  double value_;
  double threshold_;
};

/// Jittered stratified points covering each polygon, at least `count` in total.
inline std::vector<Point2> stratified_points(std::span<const ConvexPolygon> polys, std::size_t count,
                                             std::uint64_t seed) {
  std::vector<Point2> out;
  if (polys.empty() || count == 0) return out;
  std::mt19937_64 rng(seed);
  const std::size_t per = (count + polys.size() - 1) / polys.size();
  for (const auto& poly : polys) {
    const auto v = poly.vertices();
    // parallelogram frame from the first three vertices; exact for rectangles
    const Point2 o = v[0];
    const Point2 e1 = v[1] - v[0];
    const Point2 e2 = v[v.size() - 1] - v[0];
    const std::size_t nv = std::min<std::size_t>(4, per);
    const std::size_t nu = (per + nv - 1) / nv;
    for (std::size_t i = 0; i < nu; ++i) {
      for (std::size_t j = 0; j < nv; ++j) {
        const double s = (static_cast<double>(i) + unit_uniform(rng)) / static_cast<double>(nu);
        const double t = (static_cast<double>(j) + unit_uniform(rng)) / static_cast<double>(nv);
        const Point2 p = o + s * e1 + t * e2;
        if (poly.contains(p)) out.push_back(p);
      }
    }
  }
  return out;
}

struct CertificationSummary {
  std::size_t points = 0;
  double min_value = std::numeric_limits<double>::infinity();
  Point2 argmin{};
};

/// Checks maximal_lower >= alpha (up to kCertificationTolerance) at every
/// point; throws CertificationError at the first failure.
inline CertificationSummary certify(std::span<const Point2> points, const CounterexampleFunction& f, double alpha,
                                    const MaximalConfig& cfg) {
  CertificationSummary s;
  for (const auto& p : points) {
    const double v = maximal_lower(p, f, cfg);
    if (v < s.min_value) {
      s.min_value = v;
      s.argmin = p;
    }
    if (v < alpha * (1.0 - kCertificationTolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "certification failed at (" << p.x << ", " << p.y << "): " << v << " < " << alpha;
      throw CertificationError(msg.str(), p, v, alpha);
    }
    ++s.points;
  }
  return s;
}

/// Exact area of a witness set after certifying it lies in {M f >= alpha}.
inline LevelSetEstimate level_set_witness(const CounterexampleFunction& f, double alpha, const MaximalConfig& cfg,
                                          std::span<const ConvexPolygon> witness, std::size_t samples = 1000,
                                          std::uint64_t seed = 0) {
  if (!(alpha > 0.0)) throw std::invalid_argument("level_set: alpha must be positive");
  cfg.validate();
  const auto pts = stratified_points(witness, samples, seed);
  certify(pts, f, alpha, cfg);
  return {alpha, union_area(witness).value, LevelSetMode::witness_exact, 0};
}

/// Values of maximal_lower at pixel centers of a rectangular region.
struct PixelField {
  Point2 lo;
  Point2 hi;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;

  double pixel_area() const { return (hi.x - lo.x) / nx * ((hi.y - lo.y) / ny); }
  double measure_above(double alpha) const {
    const auto n = std::count_if(values.begin(), values.end(), [alpha](double v) { return v > alpha; });
    return static_cast<double>(n) * pixel_area();
  }
};

inline PixelField pixel_sweep(const CounterexampleFunction& f, const MaximalConfig& cfg, Point2 lo, Point2 hi,
                              std::size_t nx, std::size_t ny) {
  if (!(hi.x > lo.x && hi.y > lo.y) || nx == 0 || ny == 0) throw std::invalid_argument("pixel_sweep: empty region");
  cfg.validate();
  PixelField field{lo, hi, nx, ny, std::vector<double>(nx * ny, 0.0)};
  const double hx = (hi.x - lo.x) / static_cast<double>(nx);
  const double hy = (hi.y - lo.y) / static_cast<double>(ny);
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = lo.y + (static_cast<double>(j) + 0.5) * hy;
    for (std::size_t i = 0; i < nx; ++i) {
      const Point2 x{lo.x + (static_cast<double>(i) + 0.5) * hx, y};
      field.values[j * nx + i] = maximal_lower(x, f, cfg);
    }
  }
  return field;
}

/// Region containing every placement whose average of f can exceed
/// alpha_min: the support's bounding box grown by the extent of each shape
/// that is small enough to reach that average.
inline std::pair<Point2, Point2> sweep_region(const CounterexampleFunction& f, const MaximalConfig& cfg,
                                              double alpha_min) {
  const Disk& d = f.support;
  double ex = 0.0;
  double ey = 0.0;
  const bool rotated = !cfg.rotations.empty();
  for (const auto& s : cfg.shapes) {
    if (f.value * d.area() / s.area() <= alpha_min) continue;
    if (rotated) {
      ex = std::max(ex, s.diameter());
      ey = std::max(ey, s.diameter());
    } else {
      ex = std::max(ex, s.length());
      ey = std::max(ey, s.height());
    }
  }
  return {Point2{d.center.x - d.radius - ex, d.center.y - d.radius - ey},
          Point2{d.center.x + d.radius + ex, d.center.y + d.radius + ey}};
}

inline LevelSetEstimate level_set_pixels(const CounterexampleFunction& f, double alpha, const MaximalConfig& cfg,
                                         std::size_t resolution = 2048) {
  if (!(alpha > 0.0)) throw std::invalid_argument("level_set: alpha must be positive");
  if (alpha >= f.value) return {alpha, 0.0, LevelSetMode::pixel_certified, resolution};
  const auto [lo, hi] = sweep_region(f, cfg, alpha);
  const auto field = pixel_sweep(f, cfg, lo, hi, resolution, resolution);
  return {alpha, field.measure_above(alpha), LevelSetMode::pixel_certified, resolution};
}

/// measure / integral of Phi(C f / alpha).
inline double weak_type_ratio(const OrliczFunction& phi, const CounterexampleFunction& f, double alpha,
                              const LevelSetEstimate& level_set, double c = 1.0) {
  if (!(alpha > 0.0)) throw std::invalid_argument("weak_type_ratio: alpha must be positive");
  const double denom = orlicz_integral(phi, f.scaled(c / alpha));
  return level_set.measure / denom;
}

// ---------------------------------------------------------------------------
// Verification chains

struct ClaimReport {
  int k = 0;
  int k_min = 0;           // smallest k with 1 - log+ kappa' + k log(1/lambda) <= 2 k log(1/lambda)
  double integral = 0.0;   // integral of Phi0(f_k)
  double chain_bound = 0.0;  // (2 log(1/lambda) / kappa') k lambda^{-k} |Theta_k|
  double c1_y = 0.0;       // c1 |Y_k|
  double y_area = 0.0;
  double slack = 0.0;      // c1 |Y_k| / integral - 1
  bool bracket_bound_holds = false;  // integral <= (1/kappa') lambda^{-k} |Theta| [1 - log+ kappa' + k log(1/lambda)]
  bool certified = false;
  std::string certification_message;
  bool pass = false;
};

inline int claim_k_min(const ConstructionConstants& consts, int k_max) {
  const double log_inv_lambda = std::log(1.0 / consts.lambda);
  const double log_plus_kp = std::max(0.0, std::log(consts.kappa_prime));
  for (int k = 1; k <= k_max; ++k) {
    if (1.0 - log_plus_kp + k * log_inv_lambda <= 2.0 * k * log_inv_lambda) return k;
  }
  return k_max + 1;
}

inline ClaimReport claim_mphi_check(const LevelConstruction& level, const Prop2Witness& w,
                                    const ConstructionConstants& consts, int k_min, std::size_t samples = 1000,
                                    std::uint64_t seed = 0) {
  ClaimReport r;
  r.k = level.k;
  r.k_min = k_min;
  const auto fk = lacunary_fk(level, consts);
  const double log_inv_lambda = std::log(1.0 / consts.lambda);
  const double lam_k = std::pow(consts.lambda, -level.k);
  const double theta_area = w.theta_area();
  r.integral = orlicz_integral(OrliczFunction::phi0(), fk);
  r.chain_bound = 2.0 * log_inv_lambda / consts.kappa_prime * level.k * lam_k * theta_area;
  r.y_area = w.y_area.value;
  r.c1_y = consts.c1 * r.y_area;
  r.slack = r.c1_y / r.integral - 1.0;
  const double bracket = 1.0 - std::max(0.0, std::log(consts.kappa_prime)) + level.k * log_inv_lambda;
  r.bracket_bound_holds = r.integral <= lam_k / consts.kappa_prime * theta_area * bracket;
  try {
    level_set_witness(fk, 1.0, certificate_config(level), w.y_set, samples, seed);
    r.certified = true;
  } catch (const CertificationError& e) {
    r.certification_message = e.what();
  }
  r.pass = level.k >= k_min && r.integral <= r.c1_y && r.certified;
  return r;
}

struct DivergenceCriteria {
  double growth_factor = 5.0;   // r_K >= factor * r_min(3,K)
  int growth_min_levels = kMaxLevels;  // growth clause applies once K reaches this
};

struct DivergenceReport {
  std::vector<int> ks;
  std::vector<double> numerators;    // integral of Phi0(f_k)
  std::vector<double> denominators;  // integral of Phi(C f_k)
  std::vector<double> ratios;
  int increasing_from = -1;  // first k from which the ratios strictly increase, -1 if none
  bool eventually_increasing = false;
  bool growth_checked = false;
  bool growth_ok = true;
  bool pass = false;
};

inline DivergenceReport divergence_check(const OrliczFunction& phi, double c, const NestedFamily& family,
                                         const ConstructionConstants& consts, const DivergenceCriteria& crit = {}) {
  if (!(c > 0.0)) throw std::invalid_argument("divergence_check: C must be positive");
  DivergenceReport r;
  const auto phi0 = OrliczFunction::phi0();
  for (const auto& level : family.levels) {
    const auto fk = lacunary_fk(level, consts);
    r.ks.push_back(level.k);
    r.numerators.push_back(orlicz_integral(phi0, fk));
    r.denominators.push_back(orlicz_integral(phi, fk.scaled(c)));
    r.ratios.push_back(r.numerators.back() / r.denominators.back());
  }
  const std::size_t n = r.ratios.size();
  std::size_t start = n - 1;
  while (start > 0 && r.ratios[start - 1] < r.ratios[start]) --start;
  if (n >= 3 && start + 2 < n) {
    r.eventually_increasing = true;
    r.increasing_from = r.ks[start];
  }
  if (static_cast<int>(n) >= crit.growth_min_levels) {
    r.growth_checked = true;
    const std::size_t ref = std::min<std::size_t>(3, n) - 1;
    r.growth_ok = r.ratios.back() >= crit.growth_factor * r.ratios[ref];
  }
  r.pass = r.eventually_increasing && r.growth_ok;
  return r;
}

struct Weak11Entry {
  std::size_t test = 0;
  double alpha = 0.0;
  double measure = 0.0;
  double estimate = 0.0;  // alpha |{M f > alpha}| / ||f||_1
};

struct Weak11Report {
  bool rotated = false;
  std::vector<Weak11Entry> entries;
  double constant = 0.0;  // sup of the estimates
};

/// Default relative alpha grid 2^-6 .. 2^6 times a test's peak value.
inline std::vector<double> default_alpha_multipliers() {
  std::vector<double> out;
  for (int e = -6; e <= 6; ++e) out.push_back(std::ldexp(1.0, e));
  return out;
}

/// Empirical lower estimate of the weak (1,1) constant from pixel level sets.
inline Weak11Report empirical_weak11(const MaximalConfig& cfg, std::span<const CounterexampleFunction> tests,
                                     std::span<const double> alpha_multipliers, std::size_t resolution = 2048) {
  Weak11Report rep;
  rep.rotated = !cfg.rotations.empty();
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const auto& f = tests[t];
    double alpha_min = std::numeric_limits<double>::infinity();
    for (double m : alpha_multipliers) alpha_min = std::min(alpha_min, m * f.value);
    const auto [lo, hi] = sweep_region(f, cfg, alpha_min);
    const auto field = pixel_sweep(f, cfg, lo, hi, resolution, resolution);
    for (double m : alpha_multipliers) {
      Weak11Entry e;
      e.test = t;
      e.alpha = m * f.value;
      e.measure = field.measure_above(e.alpha);
      e.estimate = e.alpha * e.measure / f.l1_norm();
      rep.constant = std::max(rep.constant, e.estimate);
      rep.entries.push_back(e);
    }
  }
  return rep;
}

struct RemarkReport {
  int k = 0;
  std::vector<PairCheck> pairs;
  bool pairs_disjoint = false;
  double rect_area = 0.0;  // |Q_k| = ||f_k||_1
  double l1_norm = 0.0;
  double y_area = 0.0;
  double lhs = 0.0;  // (k+1) ||f_k||_1
  double rhs = 0.0;  // 2 |Y_k|
  CertificationSummary certification;
  bool certified = false;
  std::string certification_message;
  bool pass = false;
};

inline RemarkReport remark_check(int k, const NestedFamily& family, std::size_t samples = 1000,
                                 std::uint64_t seed = 0) {
  const auto& level = family.level(k);
  RemarkReport r;
  r.k = k;
  const auto q = level.normalized();
  r.pairs = level.angles.size() > 1 ? half_rect_pairs(q, level.angles) : std::vector<PairCheck>{};
  r.pairs_disjoint = std::all_of(r.pairs.begin(), r.pairs.end(), [](const PairCheck& p) { return p.disjoint; });
  const auto fk = remark_fk(level);
  const auto w = witness(level);
  r.rect_area = q.area();
  r.l1_norm = fk.l1_norm();
  r.y_area = w.y_area.value;
  r.lhs = static_cast<double>(k + 1) * r.l1_norm;
  r.rhs = 2.0 * r.y_area;
  const auto cfg = certificate_config(level);
  const auto pts = stratified_points(w.y_set, samples, seed);
  try {
    r.certification = certify(pts, fk, 0.25, cfg);
    r.certified = true;
  } catch (const CertificationError& e) {
    r.certification_message = e.what();
  }
  r.pass = r.pairs_disjoint && r.certified && r.lhs <= r.rhs;
  return r;
}

}  // namespace rarebasis
