// Acceptance run on the default configuration: one line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "rarebasis/report.hpp"

using namespace rarebasis;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.pass && in_time;
  failures += ok ? 0 : 1;
  std::printf("[%s] %d %s: %s (%.2f s, budget %.0f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

int main() {
  const CampaignConfig cfg;  // theta0 0.5, sigma 0.6, lambda 0.5, mu 0.8, seed 1, K 10
  const auto seq = cfg.sequence();
  const auto wb = make_workbench(seq, cfg.k_max, cfg.effective_prefix());

  criterion(1, "half rectangles past the threshold are disjoint", 5.0, [&] {
    const auto r = lemma1_suite(1000, cfg.seed);
    return Outcome{r.pass && r.cases == 1000, fmt("1000 cases, max overlap/|Q+| = %.3g", r.max_relative_overlap)};
  });

  criterion(2, "level rectangles k=1..10", 30.0, [&] {
    const auto rows = lemma2_suite(wb, 1'000'000, cfg.seed);
    bool ok = rows.size() == 10;
    double min_slack = INFINITY;
    for (const auto& r : rows) {
      ok = ok && r.size_ok && r.aspect_ok && r.pairs_disjoint && r.slack > 0.0 && r.monte_carlo_ok && r.pass;
      min_slack = std::min(min_slack, r.slack);
    }
    return Outcome{ok, fmt("all 10 levels pass, min union slack %.4f, Monte Carlo within 3 sigma", min_slack)};
  });

  criterion(3, "witness volume, quarter disk, certified lower bound", 60.0, [&] {
    const auto rows = prop2_suite(wb, 1000, cfg.seed);
    bool ok = rows.size() == 10;
    double worst_q = 0.0, min_slack = INFINITY;
    for (const auto& r : rows) {
      ok = ok && r.pass && r.volume.slack > 0.0 && r.certification.points >= 1000;
      worst_q = std::max(worst_q, r.quarter_disk_error);
      min_slack = std::min(min_slack, r.volume.slack);
    }
    return Outcome{ok, fmt("min volume slack %.4f, worst quarter-disk error %.2g", min_slack, worst_q)};
  });

  criterion(4, "L log L integral against c1 |Y_k|", 10.0, [&] {
    const auto res = claim_suite(wb, 1000, cfg.seed);
    VerificationReport rep("verify", "claim-mphi", cfg);
    record_claim(rep, res);
    const auto report = rep.finish();
    bool flagged = false;
    for (const auto& n : report["notes"]) flagged = flagged || n["key"] == "claim.constant_placement";
    bool ok = res.pass && res.k_min <= 10 && flagged;
    for (const auto& r : res.rows) {
      if (r.k >= res.k_min) ok = ok && r.slack > 0.0 && r.certified;
    }
    return Outcome{ok, "k_min = " + std::to_string(res.k_min) + ", all k >= k_min pass, constant placement flagged"};
  });

  criterion(5, "divergence of the Orlicz ratio", 1.0, [&] {
    const auto res = divergence_suite(wb, OrliczFunction::power(1.0), {1.0, 2.0});
    bool ok = res.control_flat;
    double growth = INFINITY;
    for (const auto& d : res.reports) {
      // k = 2..10 is indices 1..9
      for (std::size_t i = 2; i < d.ratios.size(); ++i) ok = ok && d.ratios[i] > d.ratios[i - 1];
      const double g = d.ratios[9] - d.ratios[1];
      growth = std::min(growth, g);
      ok = ok && g >= 4.0 * std::log(2.0) - 1e-9;
    }
    return Outcome{ok, fmt("min r10 - r2 = %.12f vs 4 log 2 = %.12f, control flat", growth, 4.0 * std::log(2.0))};
  });

  criterion(6, "rotated vs axis-parallel weak type, k=1..8", 120.0, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    BlowupOptions witness_only;
    witness_only.seed = cfg.seed;
    witness_only.axis_sweep = false;
    const auto family = sweep_family(wb, 8);
    blowup_rows(family, 8, wb.consts, witness_only);
    const double witness_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    BlowupOptions opt;
    opt.seed = cfg.seed;
    opt.resolution = 2048;
    const auto rows = blowup_rows(family, 8, wb.consts, opt);
    bool ok = rows.size() == 8 && witness_secs < 10.0;
    double axis_max = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ok = ok && rows[i].certified && rows[i].axis_constant <= kWeak11Budget;
      if (i > 0) ok = ok && rows[i].rotated_ratio > rows[i - 1].rotated_ratio;
      axis_max = std::max(axis_max, rows[i].axis_constant);
    }
    return Outcome{ok, fmt("rotated ratio %.4f -> ", rows.front().rotated_ratio) +
                           fmt("%.4f strictly increasing, axis max %.4f <= 10", rows.back().rotated_ratio, axis_max) +
                           fmt(", witness path %.2f s", witness_secs)};
  });

  criterion(7, "growth-free family k=0..5", 30.0, [&] {
    std::vector<double> angles;
    for (int j = 0; j <= 5; ++j) angles.push_back(0.5 * std::pow(0.6, j));
    const auto res = remark_suite(angles, 5, 1000, cfg.seed);
    double min_m = INFINITY;
    bool ok = res.pass;
    for (const auto& r : res.rows) {
      ok = ok && r.pairs_disjoint && r.certified && r.lhs <= r.rhs && r.certification.points >= 1000;
      min_m = std::min(min_m, r.certification.min_value);
    }
    return Outcome{ok, fmt("all pairs disjoint, min certified M f = %.15f", min_m)};
  });

  criterion(8, "repeated full campaign is byte-identical", 300.0, [&] {
    const auto a = run_verify(cfg, "all");
    const auto b = run_verify(cfg, "all");
    bool same = a.report.dump(2) == b.report.dump(2) && a.tables.size() == b.tables.size();
    for (const auto& [name, t] : a.tables) same = same && b.tables.count(name) && t.csv() == b.tables.at(name).csv();
    return Outcome{same && a.pass, std::string(same ? "report and tables identical" : "outputs differ") +
                                       (a.pass ? ", campaign passes" : ", campaign fails")};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
