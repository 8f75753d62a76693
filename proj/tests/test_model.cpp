#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "nematic/model.hpp"

using namespace nematic;

namespace {

ModelConfig gaussian_default() {
  ModelConfig c;
  c.epsilon = 0.05;
  c.mu0 = -0.5;
  c.I0 = 1.0;
  c.w = 1.0;
  c.grid.half_extent = 3.0;
  c.grid.nx = c.grid.ny = 65;
  return c;
}

std::vector<double> sample(double r_max, int n, double (*f)(double)) {
  std::vector<double> y(n);
  for (int k = 0; k < n; ++k) y[k] = f(r_max * k / (n - 1));
  return y;
}

}  // namespace

TEST_CASE("mu_eval on the Gaussian profile") {
  const ModelConfig c = gaussian_default();
  REQUIRE(mu_eval(c, 0.0, 0.0) == Catch::Approx(0.5).epsilon(1e-15));
  const double rho = std::sqrt(std::log(2.0));
  REQUIRE(mu_eval(c, rho, 0.0) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(mu_eval(c, 2.0, 0.0) == Catch::Approx(-0.5 + std::exp(-4.0)).epsilon(1e-15));
}

TEST_CASE("f_eval on the Gaussian profile") {
  const ModelConfig c = gaussian_default();
  auto f0 = f_eval(c, 0.0, 0.0);
  REQUIRE(f0[0] == 0.0);
  REQUIRE(f0[1] == 0.0);
  auto f1 = f_eval(c, 1.0, 0.0);
  REQUIRE(f1[0] == Catch::Approx(std::exp(-1.0)).epsilon(1e-15));
  REQUIRE(f1[1] == 0.0);
  auto f2 = f_eval(c, 0.0, 1.0);
  REQUIRE(f2[0] == 0.0);
  REQUIRE(f2[1] == Catch::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("f is odd and mu is radial at grid precision") {
  const ModelConfig c = gaussian_default();
  for (double x : {0.3, 0.9, 1.7})
    for (double y : {0.1, 0.6, 2.2}) {
      REQUIRE(f1_eval(c, -x, y) == -f1_eval(c, x, y));
      REQUIRE(mu_eval(c, x, y) == mu_eval(c, -x, y));
      REQUIRE(mu_eval(c, x, y) == mu_eval(c, y, x));
    }
}

TEST_CASE("f = -grad mu / 2 against centered differences, O(h^2)") {
  const ModelConfig c = gaussian_default();
  auto err_at = [&](double h) {
    double worst = 0.0;
    for (double x : {0.2, 0.7, 1.3})
      for (double y : {0.0, 0.5, 1.1}) {
        const double fd = -(mu_eval(c, x + h, y) - mu_eval(c, x - h, y)) / (4.0 * h);
        worst = std::max(worst, std::abs(fd - f1_eval(c, x, y)));
      }
    return worst;
  };
  const double e1 = err_at(1e-2);
  const double e2 = err_at(5e-3);
  REQUIRE(e1 / e2 == Catch::Approx(4.0).margin(0.3));
}

TEST_CASE("geometry closed forms") {
  {
    const ModelConfig c = gaussian_default();
    const ModelGeometry g = geometry(c);
    REQUIRE(g.rho == Catch::Approx(std::sqrt(std::log(2.0))).epsilon(1e-14));
    REQUIRE(g.mu1 == Catch::Approx(-2.0 * g.rho * 0.5).epsilon(1e-14));
    REQUIRE(std::abs(mu_eval(c, g.rho, 0.0)) < 1e-10);
  }
  {
    ModelConfig c = gaussian_default();
    c.mu0 = -1.0;
    c.I0 = std::exp(1.0);
    const ModelGeometry g = geometry(c);
    REQUIRE(g.rho == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(g.mu1 == Catch::Approx(-2.0).epsilon(1e-14));
  }
}

TEST_CASE("geometry of a tabulated parabolic profile") {
  ModelConfig c = gaussian_default();
  c.profile = ProfileKind::custom;
  c.custom.emplace(1.5, sample(1.5, 513, +[](double r) { return 1.0 - r * r; }),
                   sample(1.5, 513, +[](double r) { return r; }));
  const ModelGeometry g = geometry(c);
  REQUIRE(g.rho == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(g.mu1 == Catch::Approx(-2.0).margin(1e-6));
  REQUIRE(g.mu_origin == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("geometry error when mu has no zero") {
  ModelConfig c = gaussian_default();
  c.mu0 = 0.2;  // invalid on purpose
  REQUIRE_THROWS(geometry(c));
}

TEST_CASE("hypothesis validation") {
  SECTION("gaussian default passes, with positive f slope at 0") {
    const HypothesisReport rep = validate_hypotheses(gaussian_default());
    REQUIRE(rep.ok());
    REQUIRE(rep.f_deriv0_positive);
  }
  SECTION("cosine mu fails monotonicity") {
    ModelConfig c = gaussian_default();
    c.profile = ProfileKind::custom;
    c.custom.emplace(4.0, sample(4.0, 513, +[](double r) { return std::cos(r); }),
                     sample(4.0, 513, +[](double r) { return r * std::exp(-r); }));
    const HypothesisReport rep = validate_hypotheses(c);
    REQUIRE_FALSE(rep.ok());
    REQUIRE_FALSE(rep.mu_monotone);
  }
  SECTION("zero f fails positivity") {
    ModelConfig c = gaussian_default();
    c.profile = ProfileKind::custom;
    c.custom.emplace(1.5, sample(1.5, 513, +[](double r) { return 1.0 - r * r; }),
                     std::vector<double>(513, 0.0));
    const HypothesisReport rep = validate_hypotheses(c);
    REQUIRE_FALSE(rep.ok());
    REQUIRE_FALSE(rep.f_positive);
  }
}

TEST_CASE("custom mu queries outside the table are an error") {
  ModelConfig c = gaussian_default();
  c.profile = ProfileKind::custom;
  c.custom.emplace(1.5, sample(1.5, 129, +[](double r) { return 1.0 - r * r; }),
                   sample(1.5, 129, +[](double r) { return r; }));
  REQUIRE_THROWS_AS(mu_eval(c, 2.0, 0.0), std::out_of_range);
  REQUIRE(f_rad(c, 2.0) == 0.0);  // zero extension for the force
}

TEST_CASE("config invariant violations throw") {
  ModelConfig c = gaussian_default();
  c.mu0 = 0.1;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = gaussian_default();
  c.mu0 = -2.0;  // mu0 + I0 < 0
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = gaussian_default();
  c.epsilon = 0.0;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = gaussian_default();
  c.grid.nx = 8;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}
