#pragma once

// Level rectangles Q_k with their angle subsets, the nested family built from
// them, the witness sets (Theta_k, Y_k), and the growth-free family built from
// an arbitrary list of distinct angles.
//
// Dimensions are carried as logarithms: under the nesting rule the heights
// shrink superexponentially and leave double range well before the level cap.
// Geometry is evaluated in each level's normalized frame, where L_k = 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rarebasis/geometry.hpp"
#include "rarebasis/lacunary.hpp"

namespace rarebasis {

inline constexpr int kMaxLevels = 40;

struct ConstructionConstants {
  double c = 0.0;            // [(1/mu - 1) m0]^{-1}
  double d = 0.0;            // sqrt(4 + c^2)
  double kappa = 0.0;        // c / (2 pi)
  double kappa_prime = 0.0;  // pi / (4 d)
  double c1 = 0.0;           // 2 log(1/lambda) / (kappa kappa')
  double m0 = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

inline ConstructionConstants constants(double lambda, double mu, double m0) {
  if (!(0.0 < lambda && lambda < mu && mu < 1.0)) throw std::invalid_argument("constants: need 0 < lambda < mu < 1");
  if (!(m0 > 0.0 && m0 <= 1.0)) throw std::invalid_argument("constants: need 0 < m0 <= 1");
  ConstructionConstants k;
  k.lambda = lambda;
  k.mu = mu;
  k.m0 = m0;
  k.c = 1.0 / ((1.0 / mu - 1.0) * m0);
  k.d = std::sqrt(4.0 + k.c * k.c);
  k.kappa = k.c / (2.0 * std::numbers::pi);
  k.kappa_prime = std::numbers::pi / (4.0 * k.d);
  k.c1 = 2.0 * std::log(1.0 / lambda) / (k.kappa * k.kappa_prime);
  return k;
}

/// Constants for a validated window: m0 is the slope at the reindexing point.
inline ConstructionConstants constants(const SlopeWindow& window) {
  return constants(window.lambda, window.mu, window.slopes.at(window.j0));
}

struct LevelConstruction {
  int k = 0;
  double aspect = 0.0;      // L_k / l_k
  double log_length = 0.0;  // log L_k
  double log_height = 0.0;  // log l_k
  double log_eps = 0.0;     // log of the size cap
  std::vector<double> angles;

  /// Q_k rescaled so that L_k = 1.
  StandardRect normalized() const { return StandardRect(1.0, 1.0 / aspect); }
  /// Absolute dimensions; these underflow to zero for deep levels.
  double length() const { return std::exp(log_length); }
  double height() const { return std::exp(log_height); }
  double eps() const { return std::exp(log_eps); }
  /// Normalized polygons r_theta Q_k for theta in the angle subset.
  std::vector<ConvexPolygon> rotated_rects() const {
    std::vector<ConvexPolygon> out;
    out.reserve(angles.size());
    const auto q = normalized();
    for (double a : angles) out.push_back(place_rect(q, Placement(a)));
    return out;
  }
};

/// Builds Q_k with L_k = eps and (L_k/l_k)^2 = 4 + lambda^{-2k} c^2, using
/// the first k angles of the window after reindexing.
inline LevelConstruction build_level_log(int k, double log_eps, const SlopeWindow& window,
                                         const ConstructionConstants& consts) {
  if (k < 1) throw std::invalid_argument("build_level: k must be at least 1");
  if (!std::isfinite(log_eps)) throw std::invalid_argument("build_level: eps must be positive and finite");
  if (static_cast<std::size_t>(k) > window.available()) {
    throw std::out_of_range("build_level: validated window holds fewer than k angles");
  }
  LevelConstruction level;
  level.k = k;
  const double scale = std::pow(consts.lambda, -k) * consts.c;
  level.aspect = std::sqrt(4.0 + scale * scale);
  if (!(level.aspect >= 2.0)) throw std::logic_error("build_level: aspect below 2");
  level.log_eps = log_eps;
  level.log_length = log_eps;
  level.log_height = log_eps - std::log(level.aspect);
  level.angles.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) level.angles.push_back(window.reindexed_angle(static_cast<std::size_t>(i)));
  return level;
}

inline LevelConstruction build_level(int k, double eps, const SlopeWindow& window, const ConstructionConstants& consts) {
  if (!(eps > 0.0 && std::isfinite(eps))) throw std::invalid_argument("build_level: eps must be positive and finite");
  return build_level_log(k, std::log(eps), window, consts);
}

struct PairCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  double tan_gap = 0.0;
  double threshold = 0.0;
  bool predicate = false;  // sufficient disjointness condition
  double overlap = 0.0;    // measured, normalized frame
  bool disjoint = false;   // overlap <= tolerance * |Q+|
};

inline std::vector<PairCheck> half_rect_pairs(const StandardRect& rect, std::span<const double> angles) {
  std::vector<PairCheck> out;
  const double threshold = disjointness_threshold(rect);
  const HalfRect half{rect};
  std::vector<ConvexPolygon> halves;
  halves.reserve(angles.size());
  for (double a : angles) halves.push_back(place_half(half, Placement(a)));
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      PairCheck p;
      p.i = i;
      p.j = j;
      const double lo = std::min(angles[i], angles[j]);
      const double hi = std::max(angles[i], angles[j]);
      p.tan_gap = std::tan(hi - lo);
      p.threshold = threshold;
      p.predicate = lemma1_disjoint(rect, lo, hi);
      p.overlap = intersection_area(halves[i], halves[j]).value;
      p.disjoint = p.overlap <= kGeometryTolerance * half.area();
      out.push_back(p);
    }
  }
  return out;
}

struct Lemma2Report {
  int k = 0;
  double aspect = 0.0;
  bool size_ok = false;  // 2 l <= L <= eps
  double aspect_lower = 0.0;
  double aspect_upper = 0.0;
  bool aspect_ok = false;
  std::vector<PairCheck> pairs;
  bool pairs_disjoint = false;
  double rect_area = 0.0;   // |Q_k|, normalized
  double union_area = 0.0;  // exact
  double bound = 0.0;       // (k/2) |Q_k|
  double slack = 0.0;       // union / bound - 1
  std::optional<AreaEstimate> monte_carlo;
  bool monte_carlo_ok = true;  // within 3 sigma when run
  bool pass = false;
};

/// Checks all three level conditions in the normalized frame. When `mc` is
/// given the exact union is cross-checked against a seeded estimate.
inline Lemma2Report verify_lemma2(const LevelConstruction& level, const ConstructionConstants& consts,
                                  std::optional<MonteCarlo> mc = std::nullopt) {
  Lemma2Report r;
  r.k = level.k;
  r.aspect = level.aspect;
  r.size_ok = level.log_length <= level.log_eps && level.log_length - level.log_height >= std::log(2.0);
  const double scale = std::pow(consts.lambda, -level.k);
  r.aspect_lower = consts.c * scale;
  r.aspect_upper = consts.d * scale;
  r.aspect_ok = r.aspect_lower <= level.aspect * (1.0 + kGeometryTolerance) &&
                level.aspect <= r.aspect_upper * (1.0 + kGeometryTolerance);
  const auto q = level.normalized();
  r.pairs = half_rect_pairs(q, level.angles);
  r.pairs_disjoint = std::all_of(r.pairs.begin(), r.pairs.end(), [](const PairCheck& p) { return p.disjoint; });
  const auto polys = level.rotated_rects();
  r.rect_area = q.area();
  r.union_area = union_area(polys).value;
  r.bound = 0.5 * level.k * r.rect_area;
  r.slack = r.union_area / r.bound - 1.0;
  if (mc) {
    r.monte_carlo = union_area(polys, *mc);
    r.monte_carlo_ok = std::abs(r.monte_carlo->value - r.union_area) <= 3.0 * r.monte_carlo->std_error;
  }
  r.pass = r.size_ok && r.aspect_ok && r.pairs_disjoint && r.union_area >= r.bound && r.monte_carlo_ok;
  return r;
}

/// Nested family of levels; `first` is the index of levels.front().
struct NestedFamily {
  int first = 1;
  std::vector<LevelConstruction> levels;

  int last() const { return first + static_cast<int>(levels.size()) - 1; }
  const LevelConstruction& level(int k) const {
    if (k < first || k > last()) throw std::out_of_range("NestedFamily: level index out of range");
    return levels[static_cast<std::size_t>(k - first)];
  }
  /// Q_{k+1} is contained in Q_k for every adjacent pair.
  bool totally_ordered() const {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      if (levels[i + 1].log_length > levels[i].log_length || levels[i + 1].log_height > levels[i].log_height) {
        return false;
      }
    }
    return true;
  }
};

namespace detail {

// log of min(l_k, 1/k) for the next size cap
inline double next_log_eps(const LevelConstruction& prev, int k) {
  return std::min(prev.log_height, -std::log(static_cast<double>(k)));
}

}  // namespace detail

/// Level 1 with eps = 1; level k+1 with eps = min(l_k, 1/k).
inline NestedFamily build_nested_family(int levels, const SlopeWindow& window, const ConstructionConstants& consts) {
  if (levels < 1) throw std::invalid_argument("build_nested_family: need at least one level");
  if (levels > kMaxLevels) throw std::invalid_argument("build_nested_family: at most 40 levels are supported");
  NestedFamily fam;
  fam.first = 1;
  fam.levels.reserve(static_cast<std::size_t>(levels));
  fam.levels.push_back(build_level_log(1, 0.0, window, consts));
  for (int k = 1; k < levels; ++k) {
    fam.levels.push_back(build_level_log(k + 1, detail::next_log_eps(fam.levels.back(), k), window, consts));
  }
  return fam;
}

/// Multiplier applied to the smallest admissible aspect in the growth-free family.
inline constexpr double kRemarkSafety = 1.01;

/// Smallest aspect for which every pair of the given angles passes the
/// disjointness threshold (never below 2).
inline double remark_min_aspect(std::span<const double> angles) {
  double need = 2.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      const double t = std::tan(std::abs(angles[i] - angles[j]));
      need = std::max(need, 2.0 * std::sqrt(1.0 + 1.0 / (t * t)));
    }
  }
  return need;
}

/// Levels k = 0..K, level k using angles 0..k, with no ratio condition on
/// the angles. Q_0 has L = 1 and Q_{k+1} has L = min(l_k, 1/(k+1)).
inline NestedFamily build_remark_family(int levels_max, std::span<const double> angles) {
  if (levels_max < 0) throw std::invalid_argument("build_remark_family: K must be nonnegative");
  if (levels_max > kMaxLevels) throw std::invalid_argument("build_remark_family: at most 40 levels are supported");
  if (angles.size() < static_cast<std::size_t>(levels_max) + 1) {
    throw std::invalid_argument("build_remark_family: need K + 1 angles");
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!(angles[i] > 0.0 && angles[i] < 0.5 * std::numbers::pi)) {
      throw std::invalid_argument("build_remark_family: angles must lie in (0, pi/2)");
    }
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      if (std::abs(angles[i] - angles[j]) <= kGeometryTolerance) {
        throw std::invalid_argument("build_remark_family: angles must be pairwise distinct");
      }
    }
  }
  NestedFamily fam;
  fam.first = 0;
  double log_eps = 0.0;
  for (int k = 0; k <= levels_max; ++k) {
    LevelConstruction level;
    level.k = k;
    level.angles.assign(angles.begin(), angles.begin() + k + 1);
    level.aspect = kRemarkSafety * remark_min_aspect(level.angles);
    level.log_eps = log_eps;
    level.log_length = log_eps;
    level.log_height = log_eps - std::log(level.aspect);
    fam.levels.push_back(std::move(level));
    log_eps = std::min(fam.levels.back().log_height, -std::log(static_cast<double>(k + 1)));
  }
  return fam;
}

/// Theta_k = B(0, l_k) and Y_k = union of r_theta Q_k, in the normalized frame.
struct Prop2Witness {
  Disk theta_set;
  std::vector<ConvexPolygon> y_set;
  AreaEstimate y_area;

  double theta_area() const { return theta_set.area(); }
};

inline Prop2Witness witness(const LevelConstruction& level) {
  auto polys = level.rotated_rects();
  const auto area = union_area(polys);
  return Prop2Witness{Disk({0.0, 0.0}, 1.0 / level.aspect), std::move(polys), area};
}

struct Prop2VolumeCheck {
  double y_area = 0.0;
  double theta_area = 0.0;
  double bound = 0.0;  // kappa k lambda^{-k} |Theta_k|
  double slack = 0.0;
  bool pass = false;
};

inline Prop2VolumeCheck prop2_volume_check(const Prop2Witness& w, const LevelConstruction& level,
                                           const ConstructionConstants& consts) {
  Prop2VolumeCheck c;
  c.y_area = w.y_area.value;
  c.theta_area = w.theta_area();
  c.bound = consts.kappa * level.k * std::pow(consts.lambda, -level.k) * c.theta_area;
  c.slack = c.y_area / c.bound - 1.0;
  c.pass = c.y_area > c.bound;
  return c;
}

}  // namespace rarebasis
