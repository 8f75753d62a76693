#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "nematic/io.hpp"

namespace fs = std::filesystem;
using namespace nematic;

namespace {

const std::string cli = NEMATIC_CLI_PATH;

int run(const std::string& args, const std::string& log = "cli_test_tmp/out.log") {
  const std::string cmd = cli + " " + args + " > " + log + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelConfig small_gaussian(double eps, double a) {
  ModelConfig c;
  c.epsilon = eps;
  c.a = a;
  c.grid.half_extent = 3.0;
  c.grid.nx = c.grid.ny = 97;
  c.tol.residual_tol = 1e-6;
  c.tol.max_steps = 2000;
  return c;
}

void write_config(const std::string& path, const ModelConfig& c) {
  std::ofstream out(path);
  out << config_to_json(c).dump(2) << "\n";
}

struct TmpDir {
  TmpDir() {
    fs::remove_all("cli_test_tmp");
    fs::create_directories("cli_test_tmp");
  }
};

const TmpDir tmp_dir_guard{};

}  // namespace

TEST_CASE("thresholds subcommand on the gradient case") {
  write_config("cli_test_tmp/gauss.json", small_gaussian(0.08, 0.0));
  REQUIRE(run("thresholds --config cli_test_tmp/gauss.json") == 0);
  const std::string text = slurp("cli_test_tmp/out.log");
  REQUIRE(text.find("a_*") != std::string::npos);

  SECTION("--json round-trips into a report") {
    REQUIRE(run("thresholds --config cli_test_tmp/gauss.json --json",
                "cli_test_tmp/thr.json") == 0);
    const json j = json::parse(slurp("cli_test_tmp/thr.json"));
    const ThresholdReport rep = thresholds_from_json(j);
    REQUIRE(rep.a_star == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
    REQUIRE(rep.a_star_sup == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
    REQUIRE(rep.slices.size() > 3);
  }
}

TEST_CASE("thresholds rejects a profile violating the hypotheses") {
  ModelConfig c = small_gaussian(0.08, 0.0);
  c.profile = ProfileKind::custom;
  const int n = 257;
  std::vector<double> mu(n), f(n);
  for (int k = 0; k < n; ++k) {
    const double r = 4.0 * k / (n - 1);
    mu[k] = std::cos(r);  // fails monotonicity / unique zero
    f[k] = r * std::exp(-r);
  }
  c.custom.emplace(4.0, mu, f);
  write_config("cli_test_tmp/bad_hyp.json", c);
  REQUIRE(run("thresholds --config cli_test_tmp/bad_hyp.json") == 3);
  const std::string text = slurp("cli_test_tmp/out.log");
  REQUIRE(text.find("mu_rad") != std::string::npos);
}

TEST_CASE("malformed config JSON exits 1 with a located diagnostic") {
  {
    std::ofstream out("cli_test_tmp/broken.json");
    out << "{ \"epsilon\": 0.05,\n  \"a\": , }\n";
  }
  REQUIRE(run("simulate --config cli_test_tmp/broken.json --out cli_test_tmp/sim") == 1);
  const std::string text = slurp("cli_test_tmp/out.log");
  REQUIRE(text.find("broken.json:2:") != std::string::npos);
  REQUIRE(run("thresholds --config cli_test_tmp/broken.json") == 1);
  REQUIRE(run("sweep --config cli_test_tmp/broken.json --param a --values 1.0 "
              "--out cli_test_tmp/swp0") == 1);
}

TEST_CASE("simulate at a = 0: converged, empty zero set, complete manifest") {
  write_config("cli_test_tmp/sim0.json", small_gaussian(0.08, 0.0));
  REQUIRE(run("simulate --config cli_test_tmp/sim0.json --out cli_test_tmp/sim0 --jobs 2") == 0);
  REQUIRE(fs::exists("cli_test_tmp/sim0/field.csv"));
  REQUIRE(fs::exists("cli_test_tmp/sim0/energy.json"));
  REQUIRE(fs::exists("cli_test_tmp/sim0/zeroset.csv"));
  REQUIRE(fs::exists("cli_test_tmp/sim0/manifest.json"));

  const std::string zs = slurp("cli_test_tmp/sim0/zeroset.csv");
  REQUIRE(zs == "polyline_id,x1,x2\n");

  const json manifest = json::parse(slurp("cli_test_tmp/sim0/manifest.json"));
  for (const auto& p : manifest.at("outputs")) {
    REQUIRE(fs::exists(p.get<std::string>()));
    REQUIRE(fs::file_size(p.get<std::string>()) > 0);
  }
  REQUIRE(manifest.at("seed").get<unsigned>() == 42);

  SECTION("determinism: identical config and seed give identical CSV bytes") {
    REQUIRE(run("simulate --config cli_test_tmp/sim0.json --out cli_test_tmp/sim0b --jobs 2") ==
            0);
    REQUIRE(slurp("cli_test_tmp/sim0/field.csv") == slurp("cli_test_tmp/sim0b/field.csv"));
    REQUIRE(slurp("cli_test_tmp/sim0/zeroset.csv") == slurp("cli_test_tmp/sim0b/zeroset.csv"));
  }
}

TEST_CASE("simulate above the threshold produces a single wall polyline near x1 = 0") {
  write_config("cli_test_tmp/sim2.json", small_gaussian(0.08, 2.1));
  REQUIRE(run("simulate --config cli_test_tmp/sim2.json --out cli_test_tmp/sim2 --jobs 2") == 0);
  std::ifstream zs("cli_test_tmp/sim2/zeroset.csv");
  std::string header;
  std::getline(zs, header);
  int rows = 0;
  double worst_x1 = 0.0;
  std::string line;
  while (std::getline(zs, line)) {
    ++rows;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    REQUIRE(line.substr(0, c1) == "0");  // one polyline
    worst_x1 = std::max(worst_x1, std::abs(std::stod(line.substr(c1 + 1, c2 - c1 - 1))));
  }
  REQUIRE(rows >= 90);
  REQUIRE(worst_x1 < 0.08);
}

TEST_CASE("sweep over a crosses the regime boundary") {
  write_config("cli_test_tmp/swp.json", small_gaussian(0.08, 0.0));
  REQUIRE(run("sweep --config cli_test_tmp/swp.json --param a --values 0.7,2.1 "
              "--out cli_test_tmp/swp --jobs 2") == 0);
  const std::string summary = slurp("cli_test_tmp/swp/sweep_summary.csv");
  REQUIRE(summary.find("shadow_wall") != std::string::npos);
  REQUIRE(summary.find("standard_wall") != std::string::npos);
  REQUIRE(fs::exists("cli_test_tmp/swp/a_0.700000/field.csv"));
  REQUIRE(fs::exists("cli_test_tmp/swp/a_2.100000/field.csv"));

  SECTION("empty value list exits 1") {
    REQUIRE(run("sweep --config cli_test_tmp/swp.json --param a --out cli_test_tmp/swp2") == 1);
  }
}
