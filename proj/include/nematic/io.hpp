#pragma once
// io.hpp -- configuration JSON, CSV export, and structured reports.
//
// Config schema (flat keys):
//   epsilon, a, mu0, I0, w               numbers
//   grid.half_extent, grid.nx, grid.ny   numbers
//   profile.type                         "gaussian" | "custom"
//   profile.r_max                        number   (custom only)
//   profile.mu_rad, profile.f_rad        arrays   (custom only)
//   tol.residual, tol.dt, tol.max_steps, tol.energy_stall   numbers (optional)

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "nematic/energy.hpp"
#include "nematic/model.hpp"
#include "nematic/solver.hpp"
#include "nematic/thresholds.hpp"
#include "nematic/walls.hpp"

namespace nematic {

using nlohmann::json;

struct ConfigParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json config_to_json(const ModelConfig& c) {
  json j;
  j["epsilon"] = c.epsilon;
  j["a"] = c.a;
  j["mu0"] = c.mu0;
  j["I0"] = c.I0;
  j["w"] = c.w;
  j["grid.half_extent"] = c.grid.half_extent;
  j["grid.nx"] = c.grid.nx;
  j["grid.ny"] = c.grid.ny;
  j["profile.type"] = c.profile == ProfileKind::gaussian ? "gaussian" : "custom";
  if (c.profile == ProfileKind::custom) {
    j["profile.r_max"] = c.custom->mu.r_max();
    const int n = static_cast<int>(std::round(c.custom->mu.r_max() / c.custom->mu.spacing())) + 1;
    std::vector<double> mu(n), f(n);
    for (int k = 0; k < n; ++k) {
      const double r = c.custom->mu.r_max() * k / (n - 1);
      mu[k] = c.custom->mu.value(r);
      f[k] = c.custom->f.value(r);
    }
    j["profile.mu_rad"] = mu;
    j["profile.f_rad"] = f;
  }
  j["tol.residual"] = c.tol.residual_tol;
  j["tol.dt"] = c.tol.dt;
  j["tol.max_steps"] = c.tol.max_steps;
  j["tol.energy_stall"] = c.tol.energy_stall_tol;
  return j;
}

inline ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  try {
    c.epsilon = j.at("epsilon").get<double>();
    c.a = j.at("a").get<double>();
    c.mu0 = j.value("mu0", c.mu0);
    c.I0 = j.value("I0", c.I0);
    c.w = j.value("w", c.w);
    c.grid.half_extent = j.at("grid.half_extent").get<double>();
    c.grid.nx = j.at("grid.nx").get<int>();
    c.grid.ny = j.at("grid.ny").get<int>();
    const std::string kind = j.value("profile.type", std::string("gaussian"));
    if (kind == "custom") {
      c.profile = ProfileKind::custom;
      c.custom.emplace(j.at("profile.r_max").get<double>(),
                       j.at("profile.mu_rad").get<std::vector<double>>(),
                       j.at("profile.f_rad").get<std::vector<double>>());
    } else if (kind != "gaussian") {
      throw ConfigParseError("unknown profile.type '" + kind + "'");
    }
    c.tol.residual_tol = j.value("tol.residual", c.tol.residual_tol);
    c.tol.dt = j.value("tol.dt", c.tol.dt);
    c.tol.max_steps = j.value("tol.max_steps", c.tol.max_steps);
    c.tol.energy_stall_tol = j.value("tol.energy_stall", c.tol.energy_stall_tol);
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ModelConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // recover line/column from the byte offset for a usable diagnostic
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                           e.what());
  }
  return config_from_json(j);
}

// ---- CSV --------------------------------------------------------------------

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field_csv(const std::string& path, const Field& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "x1,x2,u\n";
  const GridSpec& g = u.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << fmt17(g.x1(i)) << ',' << fmt17(g.x2(j)) << ',' << fmt17(u.at(i, j)) << '\n';
}

inline void write_zeroset_csv(const std::string& path, const ZeroSet& z) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "polyline_id,x1,x2\n";
  for (std::size_t id = 0; id < z.polylines.size(); ++id)
    for (const auto& p : z.polylines[id].pts)
      out << id << ',' << fmt17(p[0]) << ',' << fmt17(p[1]) << '\n';
}

inline void write_profile_csv(const std::string& path, const Profile1D& y) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "s,y\n";
  for (std::size_t k = 0; k < y.n(); ++k) out << fmt17(y.s(k)) << ',' << fmt17(y.values[k]) << '\n';
}

// ---- structured reports -----------------------------------------------------

inline json energy_to_json(const EnergyBreakdown& b) {
  return json{{"total", b.total},
              {"gradient_term", b.gradient_term},
              {"potential_term", b.potential_term},
              {"quartic_term", b.quartic_term},
              {"forcing_term", b.forcing_term},
              {"renormalized", b.renormalized},
              {"anisotropy_x2", b.anisotropy_x2}};
}

inline json thresholds_to_json(const ThresholdReport& r) {
  json slices = json::array();
  for (const auto& s : r.slices)
    slices.push_back({{"x2", s.x2}, {"a_star", s.a_star}, {"a_star_sup", s.a_star_sup}});
  return json{{"a_star", r.a_star},
              {"a_star_sup", r.a_star_sup},
              {"middle_bound", r.middle_bound},
              {"argmin", {r.argmin[0], r.argmin[1]}},
              {"argmax", {r.argmax[0], r.argmax[1]}},
              {"a_star_mesh_error", r.a_star_mesh_error},
              {"a_star_sup_mesh_error", r.a_star_sup_mesh_error},
              {"slices", slices}};
}

inline ThresholdReport thresholds_from_json(const json& j) {
  ThresholdReport r;
  r.a_star = j.at("a_star").get<double>();
  r.a_star_sup = j.at("a_star_sup").get<double>();
  r.middle_bound = j.at("middle_bound").get<double>();
  r.argmin = {j.at("argmin")[0].get<double>(), j.at("argmin")[1].get<double>()};
  r.argmax = {j.at("argmax")[0].get<double>(), j.at("argmax")[1].get<double>()};
  r.a_star_mesh_error = j.at("a_star_mesh_error").get<double>();
  r.a_star_sup_mesh_error = j.at("a_star_sup_mesh_error").get<double>();
  for (const auto& s : j.at("slices"))
    r.slices.push_back(
        {s.at("x2").get<double>(), s.at("a_star").get<double>(), s.at("a_star_sup").get<double>()});
  return r;
}

inline json verdict_to_json(const RegimeVerdict& v) {
  return json{{"regime", to_string(v.regime)},
              {"deviation_to_predicted", v.deviation_to_predicted},
              {"predicted_set_descriptor", v.predicted_set_descriptor}};
}

inline json solve_to_json(const SolveResult& r) {
  json cands = json::array();
  for (const auto& ci : r.candidates)
    cands.push_back({{"label", ci.label},
                     {"energy", ci.energy},
                     {"residual", ci.residual},
                     {"converged", ci.converged},
                     {"steps", ci.steps}});
  return json{{"initializer", r.initializer_label},
              {"converged", r.converged},
              {"residual", r.residual},
              {"steps_taken", r.steps_taken},
              {"energy", energy_to_json(r.energy)},
              {"candidates", cands}};
}

}  // namespace nematic
