#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "nematic/numerics.hpp"

using namespace nematic;

TEST_CASE("pairwise_sum matches exact sums") {
  std::vector<double> v;
  for (int k = 1; k <= 1000; ++k) v.push_back(k);
  REQUIRE(pairwise_sum(v) == Catch::Approx(500500.0).epsilon(1e-15));

  std::vector<double> alt;
  for (int k = 0; k < 999; ++k) alt.push_back(k % 2 == 0 ? 1.0 : -1.0);
  REQUIRE(pairwise_sum(alt) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("adaptive Simpson on smooth integrands") {
  const double i1 = adaptive_simpson_rel([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  REQUIRE(i1 == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

  const double i2 = adaptive_simpson_rel([](double x) { return std::exp(-x * x); }, -3.0, 3.0, 1e-12);
  REQUIRE(i2 == Catch::Approx(1.7724146965190428).epsilon(1e-10));  // erf(3) sqrt(pi)
}

TEST_CASE("adaptive Simpson handles a square-root kink with depth") {
  const double v = adaptive_simpson_rel([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
  REQUIRE(v == Catch::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("golden section locates a parabola minimum") {
  auto [x, f] = golden_section_min([](double t) { return (t - 0.3) * (t - 0.3) + 2.0; }, -1.0, 1.0,
                                   1e-12);
  REQUIRE(x == Catch::Approx(0.3).margin(1e-9));
  REQUIRE(f == Catch::Approx(2.0).margin(1e-15));
}

TEST_CASE("RadialTable reproduces quadratics away from the ends") {
  const int n = 101;
  std::vector<double> y(n);
  for (int k = 0; k < n; ++k) {
    const double r = 2.0 * k / (n - 1);
    y[k] = 1.0 - r * r;
  }
  RadialTable tab(2.0, y);
  for (double r : {0.173, 0.5, 0.77, 1.0, 1.31, 1.9}) {
    REQUIRE(tab.value(r) == Catch::Approx(1.0 - r * r).margin(1e-12));
    REQUIRE(tab.deriv(r) == Catch::Approx(-2.0 * r).margin(1e-10));
  }
  REQUIRE_THROWS_AS(tab.value(2.5), std::out_of_range);
}

TEST_CASE("Kahan accumulator compensates") {
  KahanSum s;
  for (int k = 0; k < 10000000; ++k) s.add(0.1);
  REQUIRE(s.value() == Catch::Approx(1e6).epsilon(1e-15));
}
