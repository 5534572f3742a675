#pragma once

// Verification campaigns over a configured sequence: each suite returns plain
// result rows; report.hpp turns them into JSON and CSV.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rarebasis/construction.hpp"
#include "rarebasis/geometry.hpp"
#include "rarebasis/lacunary.hpp"
#include "rarebasis/maximal.hpp"

namespace rarebasis {

/// Sequence, validated window, constants and nested family for one campaign.
struct Workbench {
  LacunarySequence sequence;
  SlopeWindow window;
  ConstructionConstants consts;
  NestedFamily family;
};

inline Workbench make_workbench(const LacunarySequence& seq, int levels, std::size_t prefix) {
  auto window = validate_bilacunary(seq, prefix);
  const auto consts = constants(window);
  auto family = build_nested_family(levels, window, consts);
  return Workbench{seq, std::move(window), consts, std::move(family)};
}

// ---------------------------------------------------------------------------

struct Lemma1SuiteResult {
  std::size_t cases = 0;
  double max_relative_overlap = 0.0;  // overlap / |Q+|
  double worst_aspect = 0.0;
  double worst_vartheta = 0.0;
  double worst_theta = 0.0;
  bool pass = false;
};

/// Random admissible (L/l, vartheta, theta) with the predicate true; every
/// measured half-rectangle overlap must vanish.
inline Lemma1SuiteResult lemma1_suite(std::size_t cases, std::uint64_t seed) {
  Lemma1SuiteResult r;
  std::mt19937_64 rng(seed);
  const double half_pi = 0.5 * std::numbers::pi;
  while (r.cases < cases) {
    const double aspect = 2.01 + (100.0 - 2.01) * unit_uniform(rng);
    const StandardRect rect(aspect, 1.0);
    const double min_gap = std::atan(disjointness_threshold(rect));
    const double vartheta = (half_pi - min_gap) * unit_uniform(rng);
    const double theta = vartheta + min_gap + (half_pi - vartheta - min_gap) * unit_uniform(rng);
    if (!(theta < half_pi) || !(vartheta < theta) || !lemma1_disjoint(rect, vartheta, theta)) continue;
    const double rel = half_rect_overlap(rect, vartheta, theta) / HalfRect{rect}.area();
    if (rel >= r.max_relative_overlap) {
      r.max_relative_overlap = rel;
      r.worst_aspect = aspect;
      r.worst_vartheta = vartheta;
      r.worst_theta = theta;
    }
    ++r.cases;
  }
  r.pass = r.max_relative_overlap <= kGeometryTolerance;
  return r;
}

// ---------------------------------------------------------------------------

inline std::vector<Lemma2Report> lemma2_suite(const Workbench& wb, std::uint64_t mc_samples, std::uint64_t seed) {
  std::vector<Lemma2Report> rows;
  for (const auto& level : wb.family.levels) {
    rows.push_back(verify_lemma2(level, wb.consts, MonteCarlo{mc_samples, seed + static_cast<std::uint64_t>(level.k)}));
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct Prop2Row {
  int k = 0;
  Prop2VolumeCheck volume;
  double y_over_theta = 0.0;    // |Y_k| / |Theta_k|
  double volume_factor = 0.0;   // kappa k lambda^{-k}
  double quarter_disk_error = 0.0;  // max relative error over theta in the level's angles
  double certificate_bound = 0.0;   // kappa' lambda^k
  CertificationSummary certification;
  bool certified = false;
  std::string certification_message;
  bool pass = false;
};

inline constexpr double kQuarterDiskTolerance = 1e-9;

inline std::vector<Prop2Row> prop2_suite(const Workbench& wb, std::size_t samples, std::uint64_t seed) {
  std::vector<Prop2Row> rows;
  for (const auto& level : wb.family.levels) {
    Prop2Row row;
    row.k = level.k;
    const auto w = witness(level);
    row.volume = prop2_volume_check(w, level, wb.consts);
    row.y_over_theta = w.y_area.value / w.theta_area();
    row.volume_factor = wb.consts.kappa * level.k * std::pow(wb.consts.lambda, -level.k);
    const double quarter = 0.25 * w.theta_area();
    for (const auto& poly : w.y_set) {
      const double a = disk_polygon_area(w.theta_set, poly).value;
      row.quarter_disk_error = std::max(row.quarter_disk_error, std::abs(a / quarter - 1.0));
    }
    row.certificate_bound = wb.consts.kappa_prime * std::pow(wb.consts.lambda, level.k);
    const CounterexampleFunction indicator(1.0, w.theta_set);
    const auto pts = stratified_points(w.y_set, samples, seed + static_cast<std::uint64_t>(level.k));
    try {
      row.certification = certify(pts, indicator, row.certificate_bound, certificate_config(level));
      row.certified = true;
    } catch (const CertificationError& e) {
      row.certification_message = e.what();
    }
    row.pass = row.volume.pass && row.quarter_disk_error <= kQuarterDiskTolerance && row.certified &&
               row.certification.points >= samples;
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct ClaimSuiteResult {
  int k_min = 0;
  std::vector<ClaimReport> rows;  // every level; only k >= k_min must pass
  bool pass = false;
};

inline ClaimSuiteResult claim_suite(const Workbench& wb, std::size_t samples, std::uint64_t seed) {
  ClaimSuiteResult r;
  r.k_min = claim_k_min(wb.consts, wb.family.last());
  r.pass = true;
  for (const auto& level : wb.family.levels) {
    const auto w = witness(level);
    auto row = claim_mphi_check(level, w, wb.consts, r.k_min, samples, seed + static_cast<std::uint64_t>(level.k));
    if (level.k >= r.k_min && !row.pass) r.pass = false;
    r.rows.push_back(std::move(row));
  }
  if (r.k_min > wb.family.last()) r.pass = false;
  return r;
}

// ---------------------------------------------------------------------------

struct DivergenceSuiteResult {
  std::string phi;
  std::vector<double> cs;
  std::vector<DivergenceReport> reports;  // one per C
  DivergenceReport control;               // Phi = Phi0, C = 1
  double control_max_deviation = 0.0;     // max |r_k - 1|
  bool control_flat = false;
  bool pass = false;
};

inline DivergenceSuiteResult divergence_suite(const Workbench& wb, const OrliczFunction& phi, std::vector<double> cs) {
  DivergenceSuiteResult r;
  r.phi = phi.describe();
  r.cs = std::move(cs);
  r.pass = true;
  for (double c : r.cs) {
    r.reports.push_back(divergence_check(phi, c, wb.family, wb.consts));
    r.pass = r.pass && r.reports.back().pass;
  }
  r.control = divergence_check(OrliczFunction::phi0(), 1.0, wb.family, wb.consts);
  for (double v : r.control.ratios) r.control_max_deviation = std::max(r.control_max_deviation, std::abs(v - 1.0));
  r.control_flat = r.control_max_deviation <= 1e-12 && !r.control.pass;
  r.pass = r.pass && r.control_flat;
  return r;
}

// ---------------------------------------------------------------------------

struct BlowupRow {
  int k = 0;
  double y_area = 0.0;
  double l1_norm = 0.0;
  double alpha = 0.0;
  double rotated_ratio = 0.0;  // |Y_k| / integral of Phi(f_k / alpha), Phi(t) = t
  double level_over_l1 = 0.0;  // |Y_k| / ||f_k||_1
  bool certified = false;
  double axis_constant = 0.0;  // empirical weak (1,1) estimate, axis-parallel family
};

struct BlowupOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t resolution = 2048;
  bool axis_sweep = true;
};

/// Rotated-basis weak-type ratio against the axis-parallel weak (1,1)
/// estimate for levels up to `k_max`. For the growth-free family alpha = 1/4
/// and f_k = |Q_k| chi_B / |B|; otherwise alpha = 1/2 and f_k is built from
/// the constants. `family` may extend past k_max; the axis sweep uses every
/// member.
inline std::vector<BlowupRow> blowup_rows(const NestedFamily& family, int k_max,
                                          const std::optional<ConstructionConstants>& consts,
                                          const BlowupOptions& opt) {
  std::vector<BlowupRow> rows;
  const bool remark = !consts.has_value();
  const auto identity = OrliczFunction::power(1.0);
  const auto multipliers = default_alpha_multipliers();
  for (const auto& level : family.levels) {
    if (level.k > k_max) break;
    BlowupRow row;
    row.k = level.k;
    const auto f = remark ? remark_fk(level) : lacunary_fk(level, *consts);
    row.alpha = remark ? 0.25 : 0.5;
    const auto w = witness(level);
    row.y_area = w.y_area.value;
    row.l1_norm = f.l1_norm();
    try {
      const auto ls = level_set_witness(f, row.alpha, certificate_config(level), w.y_set, opt.samples,
                                        opt.seed + static_cast<std::uint64_t>(level.k));
      row.certified = true;
      row.rotated_ratio = weak_type_ratio(identity, f, row.alpha, ls);
      row.level_over_l1 = ls.measure / row.l1_norm;
    } catch (const CertificationError&) {
      row.certified = false;
    }
    if (opt.axis_sweep) {
      MaximalConfig axis;
      axis.shapes = frame_shapes(family, level.k);
      axis.search = TranslationSearch::closest_center;
      const std::vector<CounterexampleFunction> tests{f};
      row.axis_constant = empirical_weak11(axis, tests, multipliers, opt.resolution).constant;
    }
    rows.push_back(row);
  }
  return rows;
}

inline constexpr double kWeak11Budget = 10.0;

struct Weak11SuiteResult {
  std::vector<int> ks;
  std::vector<Weak11Report> reports;
  double max_constant = 0.0;
  bool pass = false;
};

/// Family with one level past `levels`, so the deepest swept level still
/// sees its successor Q_{k+1}.
inline NestedFamily sweep_family(const Workbench& wb, int levels) {
  return build_nested_family(std::min(levels + 1, kMaxLevels), wb.window, wb.consts);
}

inline Weak11SuiteResult weak11_suite(const Workbench& wb, int k_max, std::size_t resolution) {
  Weak11SuiteResult r;
  const auto multipliers = default_alpha_multipliers();
  const auto family = sweep_family(wb, k_max);
  for (const auto& level : family.levels) {
    if (level.k > k_max) break;
    MaximalConfig axis;
    axis.shapes = frame_shapes(family, level.k);
    axis.search = TranslationSearch::closest_center;
    const std::vector<CounterexampleFunction> tests{lacunary_fk(level, wb.consts)};
    r.ks.push_back(level.k);
    r.reports.push_back(empirical_weak11(axis, tests, multipliers, resolution));
    r.max_constant = std::max(r.max_constant, r.reports.back().constant);
  }
  r.pass = !r.reports.empty() && r.max_constant <= kWeak11Budget;
  return r;
}

// ---------------------------------------------------------------------------

struct RemarkSuiteResult {
  std::vector<double> angles;
  NestedFamily family;
  std::vector<RemarkReport> rows;
  bool nested = false;
  bool pass = false;
};

inline RemarkSuiteResult remark_suite(std::vector<double> angles, int levels_max, std::size_t samples,
                                      std::uint64_t seed) {
  RemarkSuiteResult r;
  r.angles = std::move(angles);
  r.family = build_remark_family(levels_max, r.angles);
  r.nested = r.family.totally_ordered();
  r.pass = r.nested;
  for (int k = 0; k <= levels_max; ++k) {
    r.rows.push_back(remark_check(k, r.family, samples, seed + static_cast<std::uint64_t>(k)));
    r.pass = r.pass && r.rows.back().pass;
  }
  return r;
}

}  // namespace rarebasis
