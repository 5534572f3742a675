#pragma once

// Campaign configuration, machine-readable reports (JSON + CSV) and the two
// SVG figures. Everything here is deterministic given the configuration.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rarebasis/verify.hpp"

namespace rarebasis {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Full-precision decimal form used in CSV tables.
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Configuration

struct CampaignConfig {
  double theta0 = 0.5;
  double sigma = 0.6;
  double lambda = 0.5;
  double mu = 0.8;
  std::string angles_file;  // explicit angle list; overrides theta0/sigma
  std::size_t prefix = 31;  // angles validated; 30 slope ratios
  int k_max = 10;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;  // Monte Carlo samples per union
  std::size_t cert_points = 1000;
  std::size_t lemma1_cases = 1000;
  std::size_t resolution = 2048;
  int weak11_k_max = 8;
  int remark_levels = 5;
  std::string phi = "power:1";
  double c = 1.0;
  bool remark = false;
  int figure_level = 2;
  std::string out = ".";

  /// Sets one key from its text form; throws on unknown keys or bad values.
  void set(const std::string& key, const std::string& value) {
    const auto num = [&]() {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("config: bad number for '" + key + "': " + value);
      return v;
    };
    const auto integer = [&]() {
      std::size_t pos = 0;
      const long long v = std::stoll(value, &pos);
      if (pos != value.size() || v < 0) throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
      return v;
    };
    if (key == "theta0") theta0 = num();
    else if (key == "sigma") sigma = num();
    else if (key == "lambda") lambda = num();
    else if (key == "mu") mu = num();
    else if (key == "angles_file") angles_file = value;
    else if (key == "prefix") prefix = static_cast<std::size_t>(integer());
    else if (key == "k_max") k_max = static_cast<int>(integer());
    else if (key == "seed") seed = static_cast<std::uint64_t>(integer());
    else if (key == "samples") samples = static_cast<std::uint64_t>(integer());
    else if (key == "cert_points") cert_points = static_cast<std::size_t>(integer());
    else if (key == "lemma1_cases") lemma1_cases = static_cast<std::size_t>(integer());
    else if (key == "resolution") resolution = static_cast<std::size_t>(integer());
    else if (key == "weak11_k_max") weak11_k_max = static_cast<int>(integer());
    else if (key == "remark_levels") remark_levels = static_cast<int>(integer());
    else if (key == "phi") phi = value;
    else if (key == "C") c = num();
    else if (key == "remark") remark = value == "true" || value == "1" || value == "yes";
    else if (key == "figure_level") figure_level = static_cast<int>(integer());
    else if (key == "out") out = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  /// Flat `key = value` lines; '#' starts a comment.
  void load(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) {
        throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key = value");
      }
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    load(in);
  }

  void validate() const {
    if (k_max < 1 || k_max > kMaxLevels) throw std::invalid_argument("config: k_max must lie in [1, 40]");
    if (weak11_k_max < 1) throw std::invalid_argument("config: weak11_k_max must be positive");
    if (remark_levels < 0 || remark_levels > kMaxLevels) throw std::invalid_argument("config: remark_levels out of range");
    if (samples < 10'000) throw std::invalid_argument("config: samples must be at least 1e4");
    if (resolution < 1) throw std::invalid_argument("config: resolution must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("config: C must be positive");
    OrliczFunction::parse(phi);
  }

  /// Prefix long enough for every requested level.
  std::size_t effective_prefix() const {
    return std::max<std::size_t>({prefix, static_cast<std::size_t>(k_max) + 2,
                                  static_cast<std::size_t>(remark_levels) + 1, 2});
  }

  LacunarySequence sequence() const {
    if (angles_file.empty()) return LacunarySequence::geometric(theta0, sigma, lambda, mu);
    std::ifstream in(angles_file);
    if (!in) throw std::runtime_error("config: cannot open angle file " + angles_file);
    std::vector<double> angles;
    double a = 0.0;
    while (in >> a) angles.push_back(a);
    if (!in.eof()) throw std::invalid_argument("config: angle file holds a non-numeric entry");
    return LacunarySequence::from_angles(std::move(angles), lambda, mu);
  }

  Json to_json() const {
    Json j;
    j["theta0"] = theta0;
    j["sigma"] = sigma;
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["angles_file"] = angles_file;
    j["prefix"] = effective_prefix();
    j["k_max"] = k_max;
    j["seed"] = seed;
    j["samples"] = samples;
    j["cert_points"] = cert_points;
    j["lemma1_cases"] = lemma1_cases;
    j["resolution"] = resolution;
    j["weak11_k_max"] = weak11_k_max;
    j["remark_levels"] = remark_levels;
    j["phi"] = phi;
    j["C"] = c;
    j["remark"] = remark;
    return j;
  }
};

// ---------------------------------------------------------------------------
// Reports and tables

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::ostringstream os;
    const auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

/// Finite doubles only; JSON has no representation for inf or nan.
inline Json number(double v) {
  if (!std::isfinite(v)) return Json(nullptr);
  return Json(v);
}

class VerificationReport {
 public:
  VerificationReport(std::string command, std::string suite, const CampaignConfig& cfg) {
    doc_["schema_version"] = kReportSchemaVersion;
    doc_["tool"] = "rarebasis";
    doc_["command"] = std::move(command);
    doc_["suite"] = std::move(suite);
    doc_["environment"] = environment();
    doc_["config"] = cfg.to_json();
    doc_["checks"] = Json::array();
    doc_["notes"] = Json::array();
  }

  static Json environment() {
    Json env;
    env["version"] = kVersion;
#if defined(__clang__)
    env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    env["compiler"] = std::string("gcc ") + __VERSION__;
#else
    env["compiler"] = "unknown";
#endif
    env["cxx_standard"] = static_cast<long>(__cplusplus);
    return env;
  }

  void add_check(const std::string& suite, const std::string& name, Json inputs, Json values, std::optional<double> bound,
                 std::optional<double> slack, bool pass) {
    Json c;
    c["suite"] = suite;
    c["name"] = name;
    c["inputs"] = std::move(inputs);
    c["values"] = std::move(values);
    c["bound"] = bound ? number(*bound) : Json(nullptr);
    c["slack"] = slack ? number(*slack) : Json(nullptr);
    c["pass"] = pass;
    doc_["checks"].push_back(std::move(c));
  }

  void add_note(const std::string& key, const std::string& text) {
    for (const auto& n : doc_["notes"]) {
      if (n["key"] == key) return;
    }
    doc_["notes"].push_back(Json{{"key", key}, {"text", text}});
  }

  void set_section(const std::string& key, Json value) { doc_[key] = std::move(value); }

  bool all_pass() const {
    for (const auto& c : doc_["checks"]) {
      if (!c["pass"].get<bool>()) return false;
    }
    return true;
  }

  Json finish() const {
    Json out = doc_;
    std::size_t passed = 0;
    for (const auto& c : doc_["checks"]) passed += c["pass"].get<bool>() ? 1 : 0;
    const std::size_t total = doc_["checks"].size();
    out["summary"] = Json{{"total", total}, {"passed", passed}, {"failed", total - passed}, {"pass", passed == total}};
    return out;
  }

 private:
  Json doc_;
};

inline Json window_json(const SlopeWindow& w) {
  Json j;
  j["j0"] = w.j0;
  j["prefix"] = w.prefix;
  j["lambda"] = w.lambda;
  j["mu"] = w.mu;
  j["m_j0"] = w.slopes.at(w.j0);
  j["angles"] = w.angles;
  j["ratios"] = w.ratios;
  return j;
}

inline Json constants_json(const ConstructionConstants& k) {
  return Json{{"c", k.c},         {"d", k.d},   {"kappa", k.kappa}, {"kappa_prime", k.kappa_prime},
              {"c1", k.c1},       {"m0", k.m0}, {"lambda", k.lambda}, {"mu", k.mu}};
}

// ---------------------------------------------------------------------------
// Suite -> report/table adapters

inline void record_lemma1(VerificationReport& rep, const Lemma1SuiteResult& r, std::uint64_t seed) {
  rep.add_check("lemma1", "lemma1.random_pairs", Json{{"cases", r.cases}, {"seed", seed}},
                Json{{"max_relative_overlap", r.max_relative_overlap},
                     {"worst_aspect", r.worst_aspect},
                     {"worst_vartheta", r.worst_vartheta},
                     {"worst_theta", r.worst_theta}},
                kGeometryTolerance, kGeometryTolerance - r.max_relative_overlap, r.pass);
}

inline Table record_lemma2(VerificationReport& rep, const std::vector<Lemma2Report>& rows) {
  Table t{{"k", "aspect", "aspect_lower", "aspect_upper", "rect_area", "union_area", "half_bound", "slack", "mc_value",
           "mc_std_error", "pairs_disjoint", "pass"},
          {}};
  for (const auto& r : rows) {
    double max_overlap = 0.0;
    for (const auto& p : r.pairs) max_overlap = std::max(max_overlap, p.overlap);
    Json values{{"aspect", r.aspect},
                {"aspect_lower", r.aspect_lower},
                {"aspect_upper", r.aspect_upper},
                {"size_ok", r.size_ok},
                {"aspect_ok", r.aspect_ok},
                {"pairs", r.pairs.size()},
                {"pairs_disjoint", r.pairs_disjoint},
                {"max_pair_overlap", max_overlap},
                {"union_area", r.union_area},
                {"monte_carlo", r.monte_carlo ? number(r.monte_carlo->value) : Json(nullptr)},
                {"monte_carlo_std_error", r.monte_carlo ? number(r.monte_carlo->std_error) : Json(nullptr)},
                {"monte_carlo_ok", r.monte_carlo_ok}};
    rep.add_check("lemma2", "lemma2.k" + std::to_string(r.k), Json{{"k", r.k}}, std::move(values), r.bound,
                  r.slack, r.pass);
    t.rows.push_back({std::to_string(r.k), fmt17(r.aspect), fmt17(r.aspect_lower), fmt17(r.aspect_upper),
                      fmt17(r.rect_area), fmt17(r.union_area), fmt17(r.bound), fmt17(r.slack),
                      r.monte_carlo ? fmt17(r.monte_carlo->value) : "", r.monte_carlo ? fmt17(r.monte_carlo->std_error) : "",
                      r.pairs_disjoint ? "1" : "0", r.pass ? "1" : "0"});
  }
  return t;
}

inline Table record_prop2(VerificationReport& rep, const std::vector<Prop2Row>& rows) {
  Table t{{"k", "y_over_theta", "volume_factor", "quarter_disk_error", "certified_min", "certificate_bound", "pass"}, {}};
  for (const auto& r : rows) {
    Json values{{"y_area", r.volume.y_area},
                {"theta_area", r.volume.theta_area},
                {"y_over_theta", r.y_over_theta},
                {"volume_factor", r.volume_factor},
                {"quarter_disk_error", r.quarter_disk_error},
                {"certified_points", r.certification.points},
                {"certified_min", number(r.certification.min_value)},
                {"certificate_bound", r.certificate_bound},
                {"certified", r.certified}};
    if (!r.certification_message.empty()) values["certification_message"] = r.certification_message;
    rep.add_check("prop2", "prop2.k" + std::to_string(r.k), Json{{"k", r.k}}, std::move(values), r.volume.bound,
                  r.volume.slack, r.pass);
    t.rows.push_back({std::to_string(r.k), fmt17(r.y_over_theta), fmt17(r.volume_factor), fmt17(r.quarter_disk_error),
                      fmt17(r.certification.min_value), fmt17(r.certificate_bound), r.pass ? "1" : "0"});
  }
  return t;
}

inline Table record_claim(VerificationReport& rep, const ClaimSuiteResult& res) {
  rep.add_note("claim.constant_placement",
               "verified as integral(Phi0(f_k)) <= c1 * |Y_k| together with |{M f_k >= 1}| >= |Y_k|, i.e. "
               "|{M f_k >= 1}| >= integral(Phi0(f_k)) / c1; the placement |{M f_k >= 1}| >= c1 * integral(Phi0(f_k)) "
               "is not asserted");
  rep.add_note("claim.log_plus",
               "the intermediate bound with 1 - log+(kappa') in the bracket underestimates integral(Phi0(f_k)) when "
               "kappa' < 1; reported per level as bracket_bound_holds, not used for pass/fail");
  rep.add_note("constants.m0", "c and d depend on m0 = tan(theta_j0) as well as on mu");
  Table t{{"k", "integral_phi0", "chain_bound", "c1_y", "y_area", "slack", "pass"}, {}};
  for (const auto& r : res.rows) {
    const bool required = r.k >= res.k_min;
    Json values{{"integral_phi0", r.integral},
                {"chain_bound", r.chain_bound},
                {"c1_y", r.c1_y},
                {"y_area", r.y_area},
                {"k_min", res.k_min},
                {"required", required},
                {"bracket_bound_holds", r.bracket_bound_holds},
                {"certified", r.certified}};
    if (!r.certification_message.empty()) values["certification_message"] = r.certification_message;
    rep.add_check("claim-mphi", "claim.k" + std::to_string(r.k), Json{{"k", r.k}}, std::move(values), r.c1_y,
                  r.slack, required ? r.pass : true);
    t.rows.push_back({std::to_string(r.k), fmt17(r.integral), fmt17(r.chain_bound), fmt17(r.c1_y), fmt17(r.y_area),
                      fmt17(r.slack), r.pass ? "1" : "0"});
  }
  if (res.k_min > static_cast<int>(res.rows.size())) {
    rep.add_check("claim-mphi", "claim.k_min", Json::object(), Json{{"k_min", res.k_min}}, std::nullopt, std::nullopt,
                  false);
  }
  return t;
}

inline Table record_divergence(VerificationReport& rep, const DivergenceSuiteResult& res) {
  Table t;
  t.header = {"k"};
  for (double c : res.cs) t.header.push_back("ratio_C" + fmt17(c));
  t.header.push_back("ratio_control");
  for (std::size_t i = 0; i < res.cs.size(); ++i) {
    const auto& d = res.reports[i];
    rep.add_check("divergence", "divergence.C" + fmt17(res.cs[i]), Json{{"phi", res.phi}, {"C", res.cs[i]}},
                  Json{{"ratios", d.ratios},
                       {"increasing_from", d.increasing_from},
                       {"eventually_increasing", d.eventually_increasing},
                       {"growth_checked", d.growth_checked},
                       {"growth_ok", d.growth_ok}},
                  std::nullopt, std::nullopt, d.pass);
  }
  rep.add_check("divergence", "divergence.control_phi0", Json{{"phi", "loglike:1"}, {"C", 1.0}},
                Json{{"ratios", res.control.ratios}, {"max_deviation", res.control_max_deviation}}, 1e-12,
                1e-12 - res.control_max_deviation, res.control_flat);
  const auto& ks = res.control.ks;
  for (std::size_t r = 0; r < ks.size(); ++r) {
    std::vector<std::string> row{std::to_string(ks[r])};
    for (const auto& d : res.reports) row.push_back(fmt17(d.ratios[r]));
    row.push_back(fmt17(res.control.ratios[r]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table record_weak11(VerificationReport& rep, const Weak11SuiteResult& res, std::size_t resolution) {
  Table t{{"k", "alpha", "measure", "estimate"}, {}};
  for (std::size_t i = 0; i < res.ks.size(); ++i) {
    const auto& r = res.reports[i];
    Json entries = Json::array();
    for (const auto& e : r.entries) {
      entries.push_back(Json{{"alpha", e.alpha}, {"measure", e.measure}, {"estimate", e.estimate}});
      t.rows.push_back({std::to_string(res.ks[i]), fmt17(e.alpha), fmt17(e.measure), fmt17(e.estimate)});
    }
    rep.add_check("weak11", "weak11.k" + std::to_string(res.ks[i]),
                  Json{{"k", res.ks[i]}, {"resolution", resolution}},
                  Json{{"constant", r.constant}, {"entries", std::move(entries)}}, kWeak11Budget,
                  kWeak11Budget - r.constant, r.constant <= kWeak11Budget);
  }
  return t;
}

inline Table record_remark(VerificationReport& rep, const RemarkSuiteResult& res) {
  Table t{{"k", "aspect", "lhs", "rhs", "certified_min", "pairs_disjoint", "pass"}, {}};
  rep.add_check("remark", "remark.nested", Json{{"levels", res.family.levels.size()}},
                Json{{"totally_ordered", res.nested}}, std::nullopt, std::nullopt, res.nested);
  for (const auto& r : res.rows) {
    const auto& level = res.family.level(r.k);
    Json values{{"aspect", level.aspect},
                {"pairs", r.pairs.size()},
                {"pairs_disjoint", r.pairs_disjoint},
                {"l1_norm", r.l1_norm},
                {"rect_area", r.rect_area},
                {"y_area", r.y_area},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"certified_points", r.certification.points},
                {"certified_min", number(r.certification.min_value)},
                {"certified", r.certified}};
    if (!r.certification_message.empty()) values["certification_message"] = r.certification_message;
    rep.add_check("remark", "remark.k" + std::to_string(r.k), Json{{"k", r.k}, {"angles", level.angles}},
                  std::move(values), r.rhs, r.rhs - r.lhs, r.pass);
    t.rows.push_back({std::to_string(r.k), fmt17(level.aspect), fmt17(r.lhs), fmt17(r.rhs),
                      fmt17(r.certification.min_value), r.pairs_disjoint ? "1" : "0", r.pass ? "1" : "0"});
  }
  return t;
}

inline Table blowup_table(const std::vector<BlowupRow>& rows) {
  Table t{{"k", "alpha", "y_area", "l1_norm", "rotated_ratio", "level_over_l1", "axis_weak11", "certified"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.k), fmt17(r.alpha), fmt17(r.y_area), fmt17(r.l1_norm), fmt17(r.rotated_ratio),
                      fmt17(r.level_over_l1), fmt17(r.axis_constant), r.certified ? "1" : "0"});
  }
  return t;
}

/// Per-level overview joining the construction, witness and claim columns.
inline Table levels_table(const Workbench& wb, const std::vector<Prop2Row>& prop2, const ClaimSuiteResult& claim,
                          const DivergenceSuiteResult& div) {
  Table t{{"k", "aspect", "y_over_theta", "volume_factor", "integral_phi0", "c1_y", "divergence_ratio"}, {}};
  for (std::size_t i = 0; i < wb.family.levels.size(); ++i) {
    const auto& lv = wb.family.levels[i];
    t.rows.push_back({std::to_string(lv.k), fmt17(lv.aspect), fmt17(prop2[i].y_over_theta),
                      fmt17(prop2[i].volume_factor), fmt17(claim.rows[i].integral), fmt17(claim.rows[i].c1_y),
                      div.reports.empty() ? "" : fmt17(div.reports.front().ratios[i])});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Campaign runner

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1",     "lemma2", "prop2",  "claim-mphi",
                                              "divergence", "remark", "weak11", "all"};
  return names;
}

struct CampaignResult {
  Json report;
  std::map<std::string, Table> tables;  // file stem -> table
  bool pass = false;
};

inline std::vector<double> remark_angles(const CampaignConfig& cfg, const LacunarySequence& seq) {
  std::vector<double> out;
  for (int j = 0; j <= cfg.remark_levels; ++j) out.push_back(seq.angle(static_cast<std::size_t>(j)));
  return out;
}

inline CampaignResult run_verify(const CampaignConfig& cfg, const std::string& suite) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  }
  cfg.validate();
  const bool all = suite == "all";
  const auto want = [&](const char* s) { return all || suite == s; };

  VerificationReport rep("verify", suite, cfg);
  CampaignResult out;
  const auto seq = cfg.sequence();

  if (want("lemma1")) record_lemma1(rep, lemma1_suite(cfg.lemma1_cases, cfg.seed), cfg.seed);

  const bool needs_family = want("lemma2") || want("prop2") || want("claim-mphi") || want("divergence") || want("weak11");
  if (needs_family) {
    const auto wb = make_workbench(seq, cfg.k_max, cfg.effective_prefix());
    rep.set_section("window", window_json(wb.window));
    rep.set_section("constants", constants_json(wb.consts));
    rep.add_note("window.finite_prefix",
                 "the ratio envelope is validated on a finite prefix of the sequence; asymptotic behaviour is not certified");
    if (want("lemma2")) out.tables["lemma2"] = record_lemma2(rep, lemma2_suite(wb, cfg.samples, cfg.seed));
    std::vector<Prop2Row> prop2;
    if (want("prop2")) {
      prop2 = prop2_suite(wb, cfg.cert_points, cfg.seed);
      out.tables["prop2"] = record_prop2(rep, prop2);
    }
    std::optional<ClaimSuiteResult> claim;
    if (want("claim-mphi")) {
      claim = claim_suite(wb, cfg.cert_points, cfg.seed);
      out.tables["claim"] = record_claim(rep, *claim);
    }
    std::optional<DivergenceSuiteResult> div;
    if (want("divergence")) {
      // the full campaign always covers C = 1 and C = 2
      std::vector<double> cs{cfg.c};
      if (all) cs = {1.0, 2.0};
      if (all && cfg.c != 1.0 && cfg.c != 2.0) cs.push_back(cfg.c);
      div = divergence_suite(wb, OrliczFunction::parse(cfg.phi), cs);
      out.tables["divergence"] = record_divergence(rep, *div);
    }
    if (want("weak11")) {
      out.tables["weak11"] =
          record_weak11(rep, weak11_suite(wb, std::min(cfg.weak11_k_max, cfg.k_max), cfg.resolution), cfg.resolution);
    }
    if (all) out.tables["levels"] = levels_table(wb, prop2, *claim, *div);
  }
  if (want("remark")) {
    out.tables["remark"] = record_remark(rep, remark_suite(remark_angles(cfg, seq), cfg.remark_levels,
                                                           cfg.cert_points, cfg.seed));
  }
  out.report = rep.finish();
  out.pass = rep.all_pass();
  return out;
}

struct BlowupResult {
  Table table;
  bool rotated_increasing = false;
  bool axis_bounded = false;
  bool remark_bound = true;  // |Y_k| / ||f_k||_1 >= (k+1)/2 in the growth-free family
};

inline BlowupResult run_blowup(const CampaignConfig& cfg) {
  cfg.validate();
  const auto seq = cfg.sequence();
  BlowupOptions opt;
  opt.samples = cfg.cert_points;
  opt.seed = cfg.seed;
  opt.resolution = cfg.resolution;
  std::vector<BlowupRow> rows;
  if (cfg.remark) {
    std::vector<double> angles;
    const int levels = std::min(cfg.k_max, kMaxLevels - 1);
    for (int j = 0; j <= levels + 1; ++j) angles.push_back(seq.angle(static_cast<std::size_t>(j)));
    const auto fam = build_remark_family(levels + 1, angles);
    rows = blowup_rows(fam, levels, std::nullopt, opt);
  } else {
    const auto wb = make_workbench(seq, cfg.k_max, cfg.effective_prefix());
    rows = blowup_rows(sweep_family(wb, cfg.k_max), cfg.k_max, wb.consts, opt);
  }
  BlowupResult res;
  res.table = blowup_table(rows);
  res.rotated_increasing = true;
  res.axis_bounded = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].certified) res.rotated_increasing = false;
    if (i > 0 && !(rows[i].rotated_ratio > rows[i - 1].rotated_ratio)) res.rotated_increasing = false;
    if (!(rows[i].axis_constant <= kWeak11Budget)) res.axis_bounded = false;
    if (cfg.remark && rows[i].level_over_l1 < 0.5 * (rows[i].k + 1)) res.remark_bound = false;
  }
  return res;
}

inline Json validate_sequence_report(const CampaignConfig& cfg, bool& ok) {
  VerificationReport rep("validate-sequence", "sequence", cfg);
  rep.add_note("window.finite_prefix",
               "the ratio envelope is validated on a finite prefix of the sequence; asymptotic behaviour is not certified");
  const auto seq = cfg.sequence();
  try {
    const auto w = validate_bilacunary(seq, cfg.effective_prefix());
    rep.set_section("window", window_json(w));
    rep.add_check("sequence", "sequence.window", Json{{"prefix", w.prefix}},
                  Json{{"j0", w.j0}, {"ratios", w.ratios.size()}}, std::nullopt, std::nullopt, true);
    ok = true;
  } catch (const BilacunaryError& e) {
    Json viol = Json::array();
    for (const auto& v : e.violations()) viol.push_back(Json{{"index", v.index}, {"ratio", v.ratio}});
    rep.add_check("sequence", "sequence.window", Json{{"prefix", cfg.effective_prefix()}},
                  Json{{"error", e.what()}, {"violations", std::move(viol)}}, std::nullopt, std::nullopt, false);
    ok = false;
  }
  return rep.finish();
}

// ---------------------------------------------------------------------------
// Figures

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct SvgCanvas {
  Point2 lo;
  Point2 hi;
  double scale = 1.0;  // pixels per unit
  double margin = 20.0;

  Point2 map(Point2 p) const { return {margin + (p.x - lo.x) * scale, margin + (hi.y - p.y) * scale}; }
  double width() const { return 2.0 * margin + (hi.x - lo.x) * scale; }
  double height() const { return 2.0 * margin + (hi.y - lo.y) * scale; }
};

inline std::string polygon_path(const SvgCanvas& cv, std::span<const Point2> pts) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 q = cv.map(pts[i]);
    d += (i ? " L " : "M ") + svg_num(q.x) + " " + svg_num(q.y);
  }
  return d + " Z";
}

inline std::string path_element(const std::string& id, const std::string& d, const std::string& style) {
  return "  <path id=\"" + id + "\" d=\"" + d + "\" " + style + "/>\n";
}

inline std::string svg_open(const SvgCanvas& cv, const std::string& title) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         svg_num(cv.width()) + "\" height=\"" + svg_num(cv.height()) + "\" viewBox=\"0 0 " + svg_num(cv.width()) +
         " " + svg_num(cv.height()) + "\">\n  <title>" + title + "</title>\n";
}

}  // namespace detail

/// Q, Q+, r_theta Q and r_theta Q+ for a level, in its normalized frame.
inline std::string figure1_svg(const LevelConstruction& level, double theta) {
  const auto q = level.normalized();
  const auto qp = place_rect(q, Placement(0.0));
  const auto hp = place_half(HalfRect{q}, Placement(0.0));
  const auto rq = place_rect(q, Placement(theta));
  const auto rh = place_half(HalfRect{q}, Placement(theta));
  Point2 lo{0.0, 0.0};
  Point2 hi{0.0, 0.0};
  for (const auto* p : {&qp, &rq}) {
    const auto [a, b] = p->bounding_box();
    lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
    hi = {std::max(hi.x, b.x), std::max(hi.y, b.y)};
  }
  detail::SvgCanvas cv{lo, hi, 800.0 / std::max(hi.x - lo.x, hi.y - lo.y)};
  std::string s = detail::svg_open(cv, "Q, Q+, r_theta Q and r_theta Q+ (k=" + std::to_string(level.k) + ")");
  s += detail::path_element("Q", detail::polygon_path(cv, qp.vertices()), "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"");
  s += detail::path_element("Q_plus", detail::polygon_path(cv, hp.vertices()), "fill=\"#1f4e9c\" fill-opacity=\"0.35\" stroke=\"none\"");
  s += detail::path_element("rQ", detail::polygon_path(cv, rq.vertices()), "fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.5\"");
  s += detail::path_element("rQ_plus", detail::polygon_path(cv, rh.vertices()), "fill=\"#b22222\" fill-opacity=\"0.35\" stroke=\"none\"");
  return s + "</svg>\n";
}

/// Theta_k, r_theta Q_k and their intersection, the quarter disk at the corner.
inline std::string figure2_svg(const LevelConstruction& level, double theta) {
  const auto q = level.normalized();
  const double r = q.height();
  const auto rq = place_rect(q, Placement(theta));
  // frame the disk and the near end of the rectangle
  const double extent = 3.0 * r;
  detail::SvgCanvas cv{{-extent, -extent}, {extent, extent}, 400.0 / extent};
  std::string s = detail::svg_open(cv, "Theta_k and r_theta Q_k (k=" + std::to_string(level.k) + ")");
  const Point2 c = cv.map({0.0, 0.0});
  const double rr = r * cv.scale;
  const Point2 top = cv.map({0.0, r});
  const Point2 bottom = cv.map({0.0, -r});
  const std::string disk = "M " + detail::svg_num(top.x) + " " + detail::svg_num(top.y) + " A " + detail::svg_num(rr) +
                           " " + detail::svg_num(rr) + " 0 1 0 " + detail::svg_num(bottom.x) + " " +
                           detail::svg_num(bottom.y) + " A " + detail::svg_num(rr) + " " + detail::svg_num(rr) +
                           " 0 1 0 " + detail::svg_num(top.x) + " " + detail::svg_num(top.y) + " Z";
  s += detail::path_element("Theta", disk, "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"");
  s += detail::path_element("rQ", detail::polygon_path(cv, rq.vertices()), "fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.5\"");
  const Point2 a = cv.map(rotate({r, 0.0}, theta));
  const Point2 b = cv.map(rotate({0.0, r}, theta));
  // screen y points down, so the counterclockwise quarter arc is drawn with sweep flag 0
  const std::string quarter = "M " + detail::svg_num(c.x) + " " + detail::svg_num(c.y) + " L " + detail::svg_num(a.x) +
                              " " + detail::svg_num(a.y) + " A " + detail::svg_num(rr) + " " + detail::svg_num(rr) +
                              " 0 0 0 " + detail::svg_num(b.x) + " " + detail::svg_num(b.y) + " Z";
  s += detail::path_element("intersection", quarter, "fill=\"#6a3d9a\" fill-opacity=\"0.5\" stroke=\"none\"");
  return s + "</svg>\n";
}

}  // namespace rarebasis
