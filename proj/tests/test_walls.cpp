#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nematic/solver.hpp"
#include "nematic/walls.hpp"

using namespace nematic;

namespace {

ModelConfig cfg(double eps = 0.05, double a = 0.0, int n = 129, double L = 2.0) {
  ModelConfig c;
  c.epsilon = eps;
  c.a = a;
  c.grid.half_extent = L;
  c.grid.nx = c.grid.ny = n;
  return c;
}

Field fill(const GridSpec& g, double (*f)(double, double)) {
  Field u(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) u.at(i, j) = f(g.x1(i), g.x2(j));
  return u;
}

ThresholdReport gradient_thresholds() {
  ThresholdReport rep;
  rep.a_star = std::sqrt(2.0);
  rep.a_star_sup = std::sqrt(2.0);
  rep.middle_bound = std::sqrt(2.0);
  return rep;
}

}  // namespace

TEST_CASE("zero set of a linear field is the line x1 = 0") {
  const ModelConfig c = cfg();
  const Field u = fill(c.grid, +[](double x, double) { return x; });
  const ZeroSet z = extract_zero_set(u);
  REQUIRE(z.polylines.size() == 1);
  REQUIRE_FALSE(z.polylines[0].closed);
  for (const auto& p : z.polylines[0].pts) REQUIRE(std::abs(p[0]) < c.grid.hx());
  // spans the interior height (the Dirichlet ring is not contoured)
  REQUIRE(z.polylines[0].pts.size() >= static_cast<std::size_t>(c.grid.ny - 3));
}

TEST_CASE("zero set of |x|^2 - 1 is a closed circle to O(h^2)") {
  const ModelConfig c = cfg();
  const Field u = fill(c.grid, +[](double x, double y) { return x * x + y * y - 1.0; });
  const ZeroSet z = extract_zero_set(u);
  REQUIRE(z.polylines.size() == 1);
  REQUIRE(z.polylines[0].closed);
  const double h = c.grid.hx();
  for (const auto& p : z.polylines[0].pts)
    REQUIRE(std::abs(std::hypot(p[0], p[1]) - 1.0) < h * h);
}

TEST_CASE("constant fields produce an empty zero set") {
  const ModelConfig c = cfg();
  REQUIRE(extract_zero_set(fill(c.grid, +[](double, double) { return 1.0; })).empty());
  // all-zero field: the +1e-15 perturbation makes it uniformly positive
  REQUIRE(extract_zero_set(Field(c.grid)).empty());
}

TEST_CASE("zero sets of u and -u coincide") {
  // crossing parameters are invariant under global negation, so the vertex
  // lists agree bitwise (radius chosen so no grid node sits exactly on zero)
  const ModelConfig c = cfg();
  const Field u = fill(c.grid, +[](double x, double y) { return x * x + y * y - 1.0009; });
  Field neg = u;
  for (auto& v : neg.values) v = -v;
  const ZeroSet z1 = extract_zero_set(u);
  const ZeroSet z2 = extract_zero_set(neg);
  REQUIRE(z1.vertex_count() == z2.vertex_count());
  REQUIRE(z1.polylines.size() == z2.polylines.size());
  for (std::size_t l = 0; l < z1.polylines.size(); ++l)
    for (std::size_t k = 0; k < z1.polylines[l].pts.size(); ++k) {
      REQUIRE(z1.polylines[l].pts[k][0] == z2.polylines[l].pts[k][0]);
      REQUIRE(z1.polylines[l].pts[k][1] == z2.polylines[l].pts[k][1]);
    }
}

TEST_CASE("zero-set symmetry under x2 mirror for symmetric fields") {
  const ModelConfig c = cfg();
  const Field u = fill(c.grid, +[](double x, double y) { return x * x + y * y - 1.0; });
  const ZeroSet z = extract_zero_set(u);
  // mirror each vertex and check it is still (numerically) on the zero set
  for (const auto& line : z.polylines)
    for (const auto& p : line.pts)
      REQUIRE(std::abs(std::hypot(p[0], -p[1]) - 1.0) < c.grid.hx() * c.grid.hx());
}

TEST_CASE("predicted wall sets and distances") {
  const ModelConfig c = cfg();
  const double rho = geometry(c).rho;
  SECTION("shadow set distances") {
    const PredictedWallSet p = predicted_wall_set(c, WallRegime::shadow_wall);
    REQUIRE(p.distance_outer(-rho, 0.0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(p.distance_inner(-rho, 0.0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(p.distance_outer(0.0, rho + 0.4) == Catch::Approx(0.0).margin(1e-14));
    // right half-circle: in the outer set, not in the inner set
    REQUIRE(p.distance_outer(rho, 0.0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(p.distance_inner(rho, 0.0) > 0.1);
  }
  SECTION("standard set is the vertical line") {
    const PredictedWallSet p = predicted_wall_set(c, WallRegime::standard_wall);
    REQUIRE(p.distance_outer(0.3, 1.0) == Catch::Approx(0.3).epsilon(1e-14));
    REQUIRE(p.distance_outer(0.0, -2.0) == 0.0);
  }
  REQUIRE_THROWS_AS(predicted_wall_set(c, WallRegime::indeterminate), std::invalid_argument);
}

TEST_CASE("wall_deviation classification on synthetic fields") {
  const ModelConfig c = cfg(0.05, 2.1);
  const ThresholdReport rep = gradient_thresholds();
  SECTION("tanh wall across x1 = 0 is standard") {
    const Field u = fill(c.grid, +[](double x, double) { return std::tanh(x / 0.05); });
    const RegimeVerdict v = wall_deviation(extract_zero_set(u), c, 2.1, rep);
    REQUIRE(v.regime == WallRegime::standard_wall);
    REQUIRE(v.deviation_to_predicted < c.grid.hx());
  }
  SECTION("a zero set far from the line is not standard") {
    const Field u = fill(c.grid, +[](double x, double) { return x - 0.9; });
    const RegimeVerdict v = wall_deviation(extract_zero_set(u), c, 2.1, rep);
    REQUIRE(v.regime == WallRegime::indeterminate);
    REQUIRE(v.deviation_to_predicted == Catch::Approx(0.9).margin(0.05));
  }
  SECTION("empty zero set at a = 0 is no_wall") {
    ModelConfig c0 = cfg(0.05, 0.0);
    const Field u = fill(c0.grid, +[](double, double) { return 1.0; });
    const RegimeVerdict v = wall_deviation(extract_zero_set(u), c0, 0.0, rep);
    REQUIRE(v.regime == WallRegime::no_wall);
  }
  SECTION("a inside [a_*, a^*] has no prediction") {
    const Field u = fill(c.grid, +[](double x, double) { return std::tanh(x / 0.05); });
    const RegimeVerdict v = wall_deviation(extract_zero_set(u), c, std::sqrt(2.0), rep);
    REQUIRE(v.regime == WallRegime::indeterminate);
  }
}

TEST_CASE("thomas_fermi_error vanishes on the exact TF limit") {
  const ModelConfig c = cfg(0.05, 0.0, 193, 2.0);
  const Field u = fill(c.grid, +[](double x, double y) {
    return std::sqrt(std::max(-0.5 + std::exp(-(x * x + y * y)), 0.0));
  });
  REQUIRE(thomas_fermi_error(u, c, 0.8) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE_THROWS_AS(thomas_fermi_error(u, c, 0.05), std::domain_error);
}

TEST_CASE("outer_limit_check vanishes on the synthetic outer solution") {
  const ModelConfig c = cfg(0.05, 1.0, 193, 2.0);
  const Field u = fill(c.grid, +[](double x, double y) {
    const double m = -0.5 + std::exp(-(x * x + y * y));
    const double f1 = x * std::exp(-(x * x + y * y));
    return m < -0.05 ? -0.05 * 1.0 * f1 / m : 0.0;  // eps a f1 / mu outside
  });
  const double rho = geometry(c).rho;
  REQUIRE(outer_limit_check(u, c, 1.2 * rho, 1.5 * rho) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE_THROWS_AS(outer_limit_check(u, c, 0.5 * rho, 1.5 * rho), std::domain_error);
  REQUIRE_THROWS_AS(outer_limit_check(u, c, 1.2 * rho, 5.0), std::domain_error);
}

TEST_CASE("cross-section tanh fit is exact on the model profile") {
  const ModelConfig c = cfg(0.04, 2.1, 257, 2.0);
  const double eps = c.epsilon;
  const Field u = fill(c.grid, [](double x, double y) {
    const double m0 = -0.5 + std::exp(-y * y);
    if (m0 <= 0.0) return 0.0;
    const double amp = std::sqrt(m0);
    return amp * std::tanh(x * amp / (std::sqrt(2.0) * 0.04));
  });
  const TanhFit fit = cross_section_tanh_fit(u, c, 0.0);
  REQUIRE(fit.profile_error < 2e-3);
  REQUIRE(fit.amplitude_error < 2e-3);
  REQUIRE(std::abs(fit.crossing_t) < 1e-9);
  (void)eps;
}

TEST_CASE("cross-section fit demands exactly one crossing") {
  const ModelConfig c = cfg(0.05, 2.1, 129, 2.0);
  SECTION("no crossing") {
    const Field u = fill(c.grid, +[](double, double) { return 1.0; });
    REQUIRE_THROWS_AS(cross_section_tanh_fit(u, c, 0.0), std::runtime_error);
  }
  SECTION("three crossings") {
    const Field u = fill(c.grid, +[](double x, double) { return std::sin(5.0 * x); });
    REQUIRE_THROWS_AS(cross_section_tanh_fit(u, c, 0.0), std::runtime_error);
  }
}

TEST_CASE("apriori bound ratio") {
  const ModelConfig c = cfg(0.05, 0.0, 129, 2.0);
  REQUIRE(apriori_bound_check(Field(c.grid), c) == 0.0);
  const Field tf = thomas_fermi_ansatz(c, +1);
  REQUIRE(apriori_bound_check(tf, c) <= 1.0 + 1e-12);
}

TEST_CASE("deviation does not grow under grid refinement for a fixed field") {
  const ThresholdReport rep = gradient_thresholds();
  double dev_coarse = 0.0, dev_fine = 0.0;
  {
    const ModelConfig c = cfg(0.05, 2.1, 97, 2.0);
    const Field u = fill(c.grid, +[](double x, double y) { return std::tanh((x + 0.01 * y * y) / 0.05); });
    dev_coarse = wall_deviation(extract_zero_set(u), c, 2.1, rep).deviation_to_predicted;
  }
  {
    const ModelConfig c = cfg(0.05, 2.1, 193, 2.0);
    const Field u = fill(c.grid, +[](double x, double y) { return std::tanh((x + 0.01 * y * y) / 0.05); });
    dev_fine = wall_deviation(extract_zero_set(u), c, 2.1, rep).deviation_to_predicted;
  }
  REQUIRE(dev_fine <= dev_coarse + cfg(0.05, 2.1, 193, 2.0).grid.hx());
}
