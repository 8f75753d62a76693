// nwall -- command-line laboratory for forced domain walls in thin nematic
// films: energy minimization on a grid, critical-amplitude computation, wall
// extraction, parameter sweeps, and the built-in verification matrix.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nematic/io.hpp"
#include "nematic/painleve.hpp"
#include "nematic/verify.hpp"

namespace fs = std::filesystem;
using namespace nematic;

namespace {

std::string iso_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  json j;
  Manifest(const ModelConfig& cfg, const std::string& command, unsigned seed) {
    j["config"] = config_to_json(cfg);
    j["command"] = command;
    j["started"] = iso_now();
    j["revision"] = NEMATIC_REVISION;
    j["seed"] = seed;
    j["outputs"] = json::array();
  }
  void add_output(const fs::path& p) { j["outputs"].push_back(p.string()); }
  void write(const fs::path& p) {
    j["finished"] = iso_now();
    std::ofstream out(p);
    out << j.dump(2) << "\n";
  }
};

int run_simulate(const std::string& config_path, const std::string& out_dir, unsigned seed,
                 int jobs) {
  ModelConfig cfg;
  try {
    cfg = config_from_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  fs::create_directories(out_dir);
  Manifest manifest(cfg, "simulate", seed);
  SolveResult result;
  try {
    result = minimize_multistart(cfg, seed, jobs);
  } catch (const MultistartError& e) {
    std::cerr << e.what() << "\n";
    for (const auto& ci : e.best_partial.candidates)
      std::cerr << "  " << ci.label << ": residual " << ci.residual << " after " << ci.steps
                << " steps\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }

  const fs::path base(out_dir);
  write_field_csv((base / "field.csv").string(), result.field);
  manifest.add_output(base / "field.csv");

  const ZeroSet z = extract_zero_set(result.field);
  write_zeroset_csv((base / "zeroset.csv").string(), z);
  manifest.add_output(base / "zeroset.csv");

  {
    json ej = energy_to_json(result.energy);
    ej["solve"] = solve_to_json(result);
    std::ofstream out(base / "energy.json");
    out << ej.dump(2) << "\n";
    manifest.add_output(base / "energy.json");
  }
  manifest.write(base / "manifest.json");

  std::cout << "winner " << result.initializer_label << ", E = " << result.energy.total
            << ", renormalized = " << result.energy.renormalized << ", residual = "
            << result.residual << " in " << result.steps_taken << " steps\n";
  return 0;
}

int run_thresholds(const std::string& config_path, bool as_json) {
  ModelConfig cfg;
  try {
    cfg = config_from_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  const HypothesisReport hyp = validate_hypotheses(cfg);
  if (!hyp.ok()) {
    std::cerr << "hypothesis validation failed:\n";
    for (const auto& f : hyp.failures) std::cerr << "  - " << f << "\n";
    return 3;
  }
  if (!hyp.f_deriv0_positive)
    std::cerr << "warning: f_rad'(0) <= 0, the upper threshold may be infinite\n";

  const ThresholdReport rep = thresholds_report(cfg);
  if (as_json) {
    std::cout << thresholds_to_json(rep).dump(2) << "\n";
    return 0;
  }
  std::cout << "a_*        = " << fmt17(rep.a_star) << "  (mesh error " << rep.a_star_mesh_error
            << ", argmin x = (" << rep.argmin[0] << ", " << rep.argmin[1] << "))\n";
  std::cout << "middle     = " << fmt17(rep.middle_bound) << "\n";
  std::cout << "a^*        = " << fmt17(rep.a_star_sup) << "  (mesh error "
            << rep.a_star_sup_mesh_error << ", argmax x = (" << rep.argmax[0] << ", "
            << rep.argmax[1] << "))\n";
  std::cout << "\n   x2          a_*(x2)       a^*(x2)\n";
  for (const auto& s : rep.slices) {
    char line[96];
    std::snprintf(line, sizeof line, "%+9.5f  %12.8f  %12.8f", s.x2, s.a_star, s.a_star_sup);
    std::cout << line << "\n";
  }
  return 0;
}

int run_verify(const std::string& config_path, const std::string& suite, int jobs) {
  try {
    (void)config_from_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  const bool quick = suite == "quick";
  std::cout << "running the " << (quick ? "quick" : "full")
            << " verification matrix (pinned parameters)\n";
  const auto checks = run_acceptance(quick, jobs, std::cout);
  int failed = 0;
  for (const auto& c : checks)
    if (!c.pass) ++failed;
  if (failed > 0) {
    std::cerr << failed << " of " << checks.size() << " checks failed\n";
    return 4;
  }
  std::cout << "all " << checks.size() << " checks passed\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& param,
              std::vector<double> values, const std::string& out_dir, unsigned seed, int jobs) {
  ModelConfig base;
  try {
    base = config_from_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (values.empty()) {
    std::cerr << "sweep: empty value list\n";
    return 1;
  }
  if (param != "epsilon" && param != "a") {
    std::cerr << "sweep: --param must be epsilon or a\n";
    return 1;
  }
  fs::create_directories(out_dir);
  const ThresholdReport rep = thresholds_report(base);

  std::ofstream summary(fs::path(out_dir) / "sweep_summary.csv");
  summary << "value,energy,renormalized,wall_deviation,regime\n";
  int successes = 0;
  Field warm;
  bool have_warm = false;
  for (double v : values) {
    ModelConfig cfg = base;
    if (param == "epsilon")
      cfg.epsilon = v;
    else
      cfg.a = v;
    const std::string tag = param + "_" + std::to_string(v);
    const fs::path dir = fs::path(out_dir) / tag;
    fs::create_directories(dir);
    try {
      SolveResult res;
      if (param == "epsilon" && have_warm) {
        // warm start: the previous minimizer is the natural initial guess
        res = gradient_flow_run(warm, cfg, "warm");
        if (!res.converged) res = minimize_multistart(cfg, seed, jobs);
      } else {
        res = minimize_multistart(cfg, seed, jobs);
      }
      warm = res.field;
      have_warm = true;
      write_field_csv((dir / "field.csv").string(), res.field);
      const ZeroSet z = extract_zero_set(res.field);
      write_zeroset_csv((dir / "zeroset.csv").string(), z);
      const RegimeVerdict verdict = wall_deviation(z, cfg, cfg.a, rep);
      summary << fmt17(v) << ',' << fmt17(res.energy.total) << ','
              << fmt17(res.energy.renormalized) << ',' << fmt17(verdict.deviation_to_predicted)
              << ',' << to_string(verdict.regime) << "\n";
      ++successes;
    } catch (const std::exception& e) {
      std::cerr << "sweep value " << v << " failed: " << e.what() << "\n";
      summary << fmt17(v) << ",nan,nan,nan,failed\n";
    }
  }
  return successes > 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"domain-wall laboratory for light-forced nematic films"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite = "full", param = "epsilon";
  std::vector<double> values;
  unsigned seed = 42;
  int jobs = 0;
  bool as_json = false;

  auto* sim = app.add_subcommand("simulate", "minimize the energy and export the state");
  sim->add_option("--config", config_path, "config JSON")->required();
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--seed", seed, "seed for the random initializer");
  sim->add_option("--jobs", jobs, "parallel multistart branches (0 = auto)");

  auto* thr = app.add_subcommand("thresholds", "critical amplitudes a_*, a^* and slices");
  thr->add_option("--config", config_path, "config JSON")->required();
  thr->add_flag("--json", as_json, "machine-readable output");

  auto* ver = app.add_subcommand("verify", "run the built-in verification matrix");
  ver->add_option("--config", config_path, "config JSON")->required();
  ver->add_option("--suite", suite, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  ver->add_option("--jobs", jobs, "parallel multistart branches (0 = auto)");

  auto* swp = app.add_subcommand("sweep", "repeat simulate over a parameter list");
  swp->add_option("--config", config_path, "config JSON")->required();
  swp->add_option("--param", param, "epsilon | a")->check(CLI::IsMember({"epsilon", "a"}));
  swp->add_option("--values", values, "comma-separated list")->delimiter(',');
  swp->add_option("--out", out_dir, "output directory");
  swp->add_option("--seed", seed, "seed for the random initializer");
  swp->add_option("--jobs", jobs, "parallel multistart branches (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(config_path, out_dir, seed, jobs);
    if (thr->parsed()) return run_thresholds(config_path, as_json);
    if (ver->parsed()) return run_verify(config_path, suite, jobs);
    if (swp->parsed()) return run_sweep(config_path, param, values, out_dir, seed, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
