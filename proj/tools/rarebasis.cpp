// Command-line frontend: sequence validation, verification suites, the
// blowup table and the two figures.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration,
// 3 output could not be written.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rarebasis/report.hpp"

namespace fs = std::filesystem;
using namespace rarebasis;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot use output directory '" + dir + "'");
  return fs::path(dir);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  os << content;
  if (!os) throw IoError("write failed for " + path.string());
}

void write_report(const fs::path& dir, const Json& report) { write_file(dir / "report.json", report.dump(2) + "\n"); }

void write_tables(const fs::path& dir, const std::map<std::string, Table>& tables) {
  for (const auto& [name, t] : tables) write_file(dir / ("table_" + name + ".csv"), t.csv());
}

// Command-line values; unset ones leave the file/default value alone.
struct Overrides {
  std::optional<double> theta0, sigma, lambda, mu, c;
  std::optional<int> k_max, figure_level;
  std::optional<std::uint64_t> seed, samples;
  std::optional<std::size_t> resolution, prefix;
  std::optional<std::string> phi, out, angles_file;
  bool remark = false;
};

CampaignConfig resolve(const std::string& config_file, const Overrides& o) {
  CampaignConfig cfg;
  if (!config_file.empty()) cfg.load_file(config_file);
  if (const char* env = std::getenv("RAREBASIS_OUT_DIR"); env && *env) cfg.out = env;
  if (o.theta0) cfg.theta0 = *o.theta0;
  if (o.sigma) cfg.sigma = *o.sigma;
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.mu) cfg.mu = *o.mu;
  if (o.c) cfg.c = *o.c;
  if (o.k_max) cfg.k_max = *o.k_max;
  if (o.figure_level) cfg.figure_level = *o.figure_level;
  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  if (o.resolution) cfg.resolution = *o.resolution;
  if (o.prefix) cfg.prefix = *o.prefix;
  if (o.phi) cfg.phi = *o.phi;
  if (o.out) cfg.out = *o.out;
  if (o.angles_file) cfg.angles_file = *o.angles_file;
  if (o.remark) cfg.remark = true;
  return cfg;
}

int cmd_validate_sequence(const CampaignConfig& cfg) {
  bool ok = false;
  const auto report = validate_sequence_report(cfg, ok);
  const auto dir = prepare_out(cfg.out);
  write_report(dir, report);
  std::cout << report.dump(2) << "\n";
  if (!ok) {
    std::cerr << "validate-sequence: " << report["checks"][0]["values"]["error"].get<std::string>() << "\n";
    return kExitFail;
  }
  return 0;
}

int cmd_verify(const CampaignConfig& cfg, const std::string& suite) {
  const auto dir = prepare_out(cfg.out);
  const auto res = run_verify(cfg, suite);
  write_report(dir, res.report);
  write_tables(dir, res.tables);
  const auto& s = res.report["summary"];
  std::cout << "verify " << suite << ": " << s["passed"].get<std::size_t>() << "/" << s["total"].get<std::size_t>()
            << " checks passed\n";
  for (const auto& c : res.report["checks"]) {
    if (!c["pass"].get<bool>()) std::cout << "  FAIL " << c["name"].get<std::string>() << "\n";
  }
  return res.pass ? 0 : kExitFail;
}

int cmd_blowup(const CampaignConfig& cfg) {
  const auto dir = prepare_out(cfg.out);
  const auto res = run_blowup(cfg);
  VerificationReport rep("blowup-table", cfg.remark ? "blowup-remark" : "blowup", cfg);
  rep.add_check("blowup", "blowup.rotated_increasing", Json{{"k_max", cfg.k_max}}, Json::object(), std::nullopt,
                std::nullopt, res.rotated_increasing);
  rep.add_check("blowup", "blowup.axis_bounded", Json{{"k_max", cfg.k_max}}, Json::object(), kWeak11Budget,
                std::nullopt, res.axis_bounded);
  if (cfg.remark) {
    rep.add_check("blowup", "blowup.level_over_l1", Json{{"k_max", cfg.k_max}}, Json::object(), std::nullopt,
                  std::nullopt, res.remark_bound);
  }
  const auto report = rep.finish();
  write_report(dir, report);
  write_file(dir / "table_blowup.csv", res.table.csv());
  std::cout << res.table.csv();
  return rep.all_pass() ? 0 : kExitFail;
}

int cmd_figures(const CampaignConfig& cfg) {
  const auto dir = prepare_out(cfg.out);
  const auto wb = make_workbench(cfg.sequence(), std::max(cfg.figure_level, 1), cfg.effective_prefix());
  const auto& level = wb.family.level(std::max(cfg.figure_level, 1));
  const double theta = level.angles.front();
  write_file(dir / "fig1.svg", figure1_svg(level, theta));
  write_file(dir / "fig2.svg", figure2_svg(level, theta));
  std::cout << "wrote " << (dir / "fig1.svg").string() << " and " << (dir / "fig2.svg").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rare-basis counterexample verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  Overrides o;
  app.add_option("--config", config_file, "flat key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--theta0", o.theta0, "first angle of the geometric sequence");
  app.add_option("--sigma", o.sigma, "ratio of the geometric angle sequence");
  app.add_option("--lambda", o.lambda, "lower slope-ratio envelope");
  app.add_option("--mu", o.mu, "upper slope-ratio envelope");
  app.add_option("--angles-file", o.angles_file, "whitespace-separated explicit angles");
  app.add_option("--prefix", o.prefix, "number of angles validated");
  app.add_option("--k-max", o.k_max, "deepest level K");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "Monte Carlo samples per union area");
  app.add_option("--resolution", o.resolution, "pixel grid per axis for level-set sweeps");
  app.add_option("--phi", o.phi, "Orlicz function, power:p or loglike:g");
  app.add_option("--C", o.c, "scaling constant in the divergence ratio");
  app.add_option("--figure-level", o.figure_level, "level drawn by figures");
  app.add_flag("--remark", o.remark, "use the growth-free family");
  app.add_option("--out", o.out, "output directory (env RAREBASIS_OUT_DIR)");

  auto* validate = app.add_subcommand("validate-sequence", "validate the slope-ratio envelope");
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "lemma1|lemma2|prop2|claim-mphi|divergence|remark|weak11|all")
      ->check(CLI::IsMember(suite_names()));
  auto* blowup = app.add_subcommand("blowup-table", "rotated vs axis-parallel weak-type table");
  auto* figures = app.add_subcommand("figures", "write fig1.svg and fig2.svg");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = resolve(config_file, o);
    cfg.validate();
    if (validate->parsed()) return cmd_validate_sequence(cfg);
    if (verify->parsed()) return cmd_verify(cfg, suite);
    if (blowup->parsed()) return cmd_blowup(cfg);
    if (figures->parsed()) return cmd_figures(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
