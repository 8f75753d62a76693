#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "nematic/thresholds.hpp"
#include "nematic/verify.hpp"

using namespace nematic;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ModelConfig gaussian_cfg() {
  ModelConfig c;
  c.epsilon = 0.05;
  c.mu0 = -0.5;
  c.I0 = 1.0;
  c.w = 1.0;
  c.grid.half_extent = 3.0;
  c.grid.nx = c.grid.ny = 65;
  return c;
}

// gaussian mu with f scaled: f = scale * (-mu'/2), tabulated
ModelConfig scaled_gradient_cfg(double scale) {
  ModelConfig c = gaussian_cfg();
  c.profile = ProfileKind::custom;
  const int n = 2049;
  const double r_max = 6.0;
  std::vector<double> mu(n), f(n);
  for (int k = 0; k < n; ++k) {
    const double r = r_max * k / (n - 1);
    mu[k] = -0.5 + std::exp(-r * r);
    f[k] = scale * r * std::exp(-r * r);
  }
  c.custom.emplace(r_max, std::move(mu), std::move(f));
  return c;
}

}  // namespace

TEST_CASE("gradient case: a_* = a^* = sqrt(2)") {
  const ModelConfig c = gaussian_cfg();
  REQUIRE(threshold_a_star(c) == Catch::Approx(kSqrt2).margin(1e-6));
  REQUIRE(threshold_a_star_sup(c) == Catch::Approx(kSqrt2).margin(1e-6));
  REQUIRE(threshold_middle_bound(c) == Catch::Approx(kSqrt2).margin(1e-9));
}

TEST_CASE("homogeneity: scaling f by c divides the thresholds by c") {
  const ModelConfig doubled = scaled_gradient_cfg(2.0);
  REQUIRE(threshold_a_star(doubled) == Catch::Approx(kSqrt2 / 2.0).margin(2e-5));
  REQUIRE(threshold_a_star_sup(doubled) == Catch::Approx(kSqrt2 / 2.0).margin(2e-5));
}

TEST_CASE("slices of the gradient case are flat in x2") {
  const ModelConfig c = gaussian_cfg();
  const double rho = geometry(c).rho;
  const auto slices = threshold_slices(c, {0.0, 0.5 * rho, -0.5 * rho});
  for (const auto& s : slices) {
    REQUIRE(s.a_star == Catch::Approx(kSqrt2).margin(1e-6));
    REQUIRE(s.a_star_sup == Catch::Approx(kSqrt2).margin(1e-6));
  }
  REQUIRE(slices[1].a_star == Catch::Approx(slices[2].a_star).margin(1e-10));
  REQUIRE_THROWS_AS(threshold_slices(c, {rho * 1.01}), std::domain_error);
}

TEST_CASE("beta functions: boundary values and critical sign pattern") {
  const ModelConfig c = gaussian_cfg();
  const double rho = geometry(c).rho;
  SECTION("beta_* vanishes on the rim") {
    for (double th : {0.5 * M_PI + 0.1, M_PI - 0.2, M_PI}) {
      auto [bs, bsup] = beta_functions(c, 0.8, {rho * std::cos(th), rho * std::sin(th)});
      REQUIRE(bs == Catch::Approx(0.0).margin(1e-9));
      (void)bsup;
    }
  }
  SECTION("beta^* vanishes on x1 = 0") {
    for (double y : {0.0, 0.3, -0.6}) {
      auto [bs, bsup] = beta_functions(c, 1.4, {0.0, y});
      REQUIRE(bsup == Catch::Approx(0.0).margin(1e-9));
      (void)bs;
    }
  }
  SECTION("at a = sqrt2: beta_* >= 0 and beta^* <= 0 across the half-disc") {
    // in the gradient case both functions vanish identically at criticality,
    // so the margin is pure quadrature tolerance
    for (int iy = 0; iy < 50; ++iy)
      for (int ix = 0; ix < 50; ++ix) {
        const double x2 = rho * (-0.98 + 1.96 * iy / 49.0);
        const double chord = std::sqrt(rho * rho - x2 * x2);
        const double x1 = -chord * (0.02 + 0.96 * ix / 49.0);
        auto [bs, bsup] = beta_functions(c, kSqrt2, {x1, x2});
        REQUIRE(bs >= -1e-8);
        REQUIRE(bsup <= 1e-8);
      }
  }
  SECTION("points outside the half-disc are rejected") {
    REQUIRE_THROWS_AS(beta_functions(c, 1.0, {0.2, 0.0}), std::domain_error);
    REQUIRE_THROWS_AS(beta_functions(c, 1.0, {-rho, rho}), std::domain_error);
  }
}

TEST_CASE("mesh convergence of the gradient-case threshold") {
  const ModelConfig c = gaussian_cfg();
  const double coarse = threshold_a_star(c, 33, 97);
  const double fine = threshold_a_star(c, 65, 193);
  REQUIRE(std::abs(fine - coarse) < 1e-6);
}

TEST_CASE("sandwich ordering for custom hyp-valid profiles") {
  for (const ModelConfig& c :
       {AcceptanceContext::parabolic_profile(), AcceptanceContext::cosine_profile()}) {
    const double lo = threshold_a_star(c);
    const double mid = threshold_middle_bound(c);
    const double hi = threshold_a_star_sup(c);
    REQUIRE(lo <= mid + 1e-9);
    REQUIRE(mid <= hi + 1e-9);
    REQUIRE(lo > 0.0);
  }
}

TEST_CASE("brute-force oracle agreement for custom profiles") {
  for (const ModelConfig& c :
       {AcceptanceContext::parabolic_profile(), AcceptanceContext::cosine_profile()}) {
    const double lo = threshold_a_star(c);
    const double hi = threshold_a_star_sup(c);
    const OracleThresholds ora = oracle_thresholds(c, 501, 8192);
    REQUIRE(lo == Catch::Approx(ora.a_star).epsilon(2e-4));
    REQUIRE(hi == Catch::Approx(ora.a_star_sup).epsilon(2e-4));
  }
}

TEST_CASE("report assembles consistently") {
  const ModelConfig c = gaussian_cfg();
  const ThresholdReport rep = thresholds_report(c, 33, 97, 1e-9, 7);
  REQUIRE(rep.a_star > 0.0);
  REQUIRE(rep.a_star <= rep.middle_bound + 1e-6);
  REQUIRE(rep.middle_bound <= rep.a_star_sup + 1e-6);
  REQUIRE(rep.slices.size() == 7);
  double slice_min = 1e300;
  for (const auto& s : rep.slices) slice_min = std::min(slice_min, s.a_star);
  REQUIRE(rep.a_star <= slice_min + 1e-6);
  REQUIRE(rep.a_star_mesh_error < 1e-6);
}
