#pragma once
// walls.hpp -- domain-wall extraction (zero level sets by marching squares),
// classification against the predicted wall sets, and the pointwise checks of
// the Thomas-Fermi, outer and tanh cross-section limits.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/model.hpp"
#include "nematic/thresholds.hpp"

namespace nematic {

struct ZeroSet {
  struct Polyline {
    std::vector<std::array<double, 2>> pts;
    bool closed = false;
  };
  std::vector<Polyline> polylines;

  bool empty() const { return polylines.empty(); }
  std::size_t vertex_count() const {
    std::size_t n = 0;
    for (const auto& p : polylines) n += p.pts.size();
    return n;
  }
};

enum class WallRegime { shadow_wall, standard_wall, indeterminate, no_wall };

inline const char* to_string(WallRegime r) {
  switch (r) {
    case WallRegime::shadow_wall: return "shadow_wall";
    case WallRegime::standard_wall: return "standard_wall";
    case WallRegime::indeterminate: return "indeterminate";
    case WallRegime::no_wall: return "no_wall";
  }
  return "?";
}

struct RegimeVerdict {
  WallRegime regime = WallRegime::indeterminate;
  double deviation_to_predicted = 0.0;
  std::string predicted_set_descriptor;
};

// ---- zero level set ---------------------------------------------------------

namespace detail {

inline double perturb_zero(double v) { return v == 0.0 ? 1e-15 : v; }

// Edge keys: 2*(node index) for the edge to (i+1, j), +1 for the edge to (i, j+1).
inline std::int64_t hedge(int i, int j, int nx) {
  return 2 * (static_cast<std::int64_t>(j) * nx + i);
}
inline std::int64_t vedge(int i, int j, int nx) {
  return 2 * (static_cast<std::int64_t>(j) * nx + i) + 1;
}

}  // namespace detail

// Marching squares over interior cells. The outermost node ring carries the
// Dirichlet clamp, not field data, so cells touching it are excluded; a
// negative far field against the clamped ring would otherwise spawn level
// lines hugging the box sides.
inline ZeroSet extract_zero_set(const Field& u) {
  const GridSpec& g = u.grid;
  const int nx = g.nx, ny = g.ny;
  std::map<std::int64_t, std::array<double, 2>> points;
  std::vector<std::pair<std::int64_t, std::int64_t>> segments;

  auto crossing = [&](int i0, int j0, int i1, int j1, std::int64_t key) {
    if (!points.count(key)) {
      const double va = detail::perturb_zero(u.at(i0, j0));
      const double vb = detail::perturb_zero(u.at(i1, j1));
      const double t = va / (va - vb);
      points[key] = {g.x1(i0) + t * (g.x1(i1) - g.x1(i0)), g.x2(j0) + t * (g.x2(j1) - g.x2(j0))};
    }
    return key;
  };

  for (int j = 1; j + 2 < ny; ++j) {
    for (int i = 1; i + 2 < nx; ++i) {
      const double a = detail::perturb_zero(u.at(i, j));          // bottom-left
      const double b = detail::perturb_zero(u.at(i + 1, j));      // bottom-right
      const double c = detail::perturb_zero(u.at(i + 1, j + 1));  // top-right
      const double d = detail::perturb_zero(u.at(i, j + 1));      // top-left
      const int code = (a > 0 ? 1 : 0) | (b > 0 ? 2 : 0) | (c > 0 ? 4 : 0) | (d > 0 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const std::int64_t bottom = detail::hedge(i, j, nx);
      const std::int64_t top = detail::hedge(i, j + 1, nx);
      const std::int64_t left = detail::vedge(i, j, nx);
      const std::int64_t right = detail::vedge(i + 1, j, nx);
      auto seg = [&](std::int64_t e1, int p1i, int p1j, int q1i, int q1j, std::int64_t e2, int p2i,
                     int p2j, int q2i, int q2j) {
        segments.emplace_back(crossing(p1i, p1j, q1i, q1j, e1), crossing(p2i, p2j, q2i, q2j, e2));
      };
      switch (code) {
        case 1: case 14:
          seg(bottom, i, j, i + 1, j, left, i, j, i, j + 1);
          break;
        case 2: case 13:
          seg(bottom, i, j, i + 1, j, right, i + 1, j, i + 1, j + 1);
          break;
        case 4: case 11:
          seg(right, i + 1, j, i + 1, j + 1, top, i, j + 1, i + 1, j + 1);
          break;
        case 8: case 7:
          seg(left, i, j, i, j + 1, top, i, j + 1, i + 1, j + 1);
          break;
        case 3: case 12:
          seg(left, i, j, i, j + 1, right, i + 1, j, i + 1, j + 1);
          break;
        case 6: case 9:
          seg(bottom, i, j, i + 1, j, top, i, j + 1, i + 1, j + 1);
          break;
        case 5: case 10: {
          // saddle: resolve the pairing by the sign of the cell center
          const double center = detail::perturb_zero(0.25 * (a + b + c + d));
          const bool center_pos = center > 0;
          const bool like_a = (code == 5) == center_pos;
          if (like_a) {
            seg(bottom, i, j, i + 1, j, right, i + 1, j, i + 1, j + 1);
            seg(left, i, j, i, j + 1, top, i, j + 1, i + 1, j + 1);
          } else {
            seg(bottom, i, j, i + 1, j, left, i, j, i, j + 1);
            seg(right, i + 1, j, i + 1, j + 1, top, i, j + 1, i + 1, j + 1);
          }
          break;
        }
        default: break;
      }
    }
  }

  // stitch segments into chains
  std::multimap<std::int64_t, std::size_t> by_end;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_end.emplace(segments[s].first, s);
    by_end.emplace(segments[s].second, s);
  }
  std::vector<bool> used(segments.size(), false);
  ZeroSet zs;

  auto walk = [&](std::size_t s0, std::int64_t start_key) {
    ZeroSet::Polyline line;
    std::int64_t key = start_key;
    line.pts.push_back(points[key]);
    std::size_t s = s0;
    while (true) {
      used[s] = true;
      key = segments[s].first == key ? segments[s].second : segments[s].first;
      line.pts.push_back(points[key]);
      std::size_t next = s;
      auto [lo, hi] = by_end.equal_range(key);
      for (auto it = lo; it != hi; ++it)
        if (!used[it->second]) next = it->second;
      if (next == s) break;
      s = next;
    }
    return line;
  };

  // open chains first: start from keys with exactly one incident segment
  std::map<std::int64_t, int> degree;
  for (const auto& s : segments) {
    ++degree[s.first];
    ++degree[s.second];
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    std::int64_t start = -1;
    if (degree[segments[s].first] == 1)
      start = segments[s].first;
    else if (degree[segments[s].second] == 1)
      start = segments[s].second;
    if (start >= 0) zs.polylines.push_back(walk(s, start));
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    auto line = walk(s, segments[s].first);
    line.closed = true;
    zs.polylines.push_back(std::move(line));
  }
  return zs;
}

// ---- predicted sets ---------------------------------------------------------

// Distance evaluators for the limiting wall sets. The shadow regime carries
// two descriptors: the guaranteed inner set and the outer superset; deviation
// is measured against the outer one.
struct PredictedWallSet {
  WallRegime regime = WallRegime::indeterminate;
  double rho = 0.0;
  std::string descriptor;

  double distance_outer(double x1, double x2) const {
    if (regime == WallRegime::standard_wall) return std::abs(x1);
    const double ray = std::hypot(x1, std::max(rho - std::abs(x2), 0.0));
    const double circle = std::abs(std::hypot(x1, x2) - rho);
    return std::min(circle, ray);
  }

  double distance_inner(double x1, double x2) const {
    if (regime == WallRegime::standard_wall) return std::abs(x1);
    const double ray = std::hypot(x1, std::max(rho - std::abs(x2), 0.0));
    // left half-circle: radial distance when x1 <= 0, otherwise the nearest
    // point is the pole (0, +-rho)
    const double half_circle = x1 <= 0.0 ? std::abs(std::hypot(x1, x2) - rho)
                                         : std::hypot(x1, std::abs(x2) - rho);
    return std::min(half_circle, ray);
  }
};

inline PredictedWallSet predicted_wall_set(const ModelConfig& c, WallRegime regime) {
  if (regime != WallRegime::shadow_wall && regime != WallRegime::standard_wall)
    throw std::invalid_argument("predicted_wall_set: no prediction for this regime");
  PredictedWallSet p;
  p.regime = regime;
  p.rho = geometry(c).rho;
  p.descriptor = regime == WallRegime::standard_wall
                     ? "{x1 = 0}"
                     : "outer: {|x| = rho} u {x1 = 0, |x2| >= rho}; inner: left half-circle u rays";
  return p;
}

// Classifies the wall regime of a zero set given the computed thresholds and
// measures the one-sided Hausdorff deviation to the predicted set.
inline RegimeVerdict wall_deviation(const ZeroSet& z, const ModelConfig& c, double a,
                                    const ThresholdReport& report) {
  RegimeVerdict v;
  if (a == 0.0) {
    if (z.empty()) {
      v.regime = WallRegime::no_wall;
      v.predicted_set_descriptor = "empty (positive radial minimizer)";
      return v;
    }
    v.regime = WallRegime::indeterminate;
    v.predicted_set_descriptor = "expected empty zero set at a = 0";
    v.deviation_to_predicted = std::numeric_limits<double>::quiet_NaN();
    return v;
  }
  const bool shadow = a < report.a_star;
  const bool standard = a > report.a_star_sup;
  if (!shadow && !standard) {
    v.regime = WallRegime::indeterminate;
    v.predicted_set_descriptor = "a inside [a_*, a^*]: no prediction";
    return v;
  }
  if (z.empty()) {
    v.regime = WallRegime::indeterminate;
    v.predicted_set_descriptor = "no zeros found";
    return v;
  }
  const PredictedWallSet p = predicted_wall_set(
      c, shadow ? WallRegime::shadow_wall : WallRegime::standard_wall);
  double dev = 0.0;
  for (const auto& line : z.polylines)
    for (const auto& pt : line.pts) dev = std::max(dev, p.distance_outer(pt[0], pt[1]));
  v.deviation_to_predicted = dev;
  v.predicted_set_descriptor = p.descriptor;
  v.regime = dev <= 5.0 * c.epsilon ? p.regime : WallRegime::indeterminate;
  return v;
}

// ---- limit checks -----------------------------------------------------------

// L-inf of ||u| - sqrt(mu^+)| over the disc of radius shrink*rho, minus an
// eps^(2/3) rim collar; when the field changes sign inside that region a
// 10 eps collar of the wall line x1 = 0 is excluded as well.
inline double thomas_fermi_error(const Field& u, const ModelConfig& c, double shrink) {
  ensure_matching_grid(u, c.grid);
  const GridSpec& g = c.grid;
  const ModelGeometry geom = geometry(c);
  const double r_cap = shrink * geom.rho - std::pow(c.epsilon, 2.0 / 3.0);
  if (!(r_cap > 0.0)) throw std::domain_error("thomas_fermi_error: empty evaluation region");
  bool has_pos = false, has_neg = false;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (std::hypot(g.x1(i), g.x2(j)) > r_cap) continue;
      has_pos = has_pos || u.at(i, j) > 0.0;
      has_neg = has_neg || u.at(i, j) < 0.0;
    }
  const bool exclude_wall = has_pos && has_neg;
  double err = 0.0;
  bool any = false;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x1(i), y = g.x2(j);
      if (std::hypot(x, y) > r_cap) continue;
      if (exclude_wall && std::abs(x) <= 10.0 * c.epsilon) continue;
      const double ref = std::sqrt(std::max(mu_eval(c, x, y), 0.0));
      err = std::max(err, std::abs(std::abs(u.at(i, j)) - ref));
      any = true;
    }
  if (!any) throw std::domain_error("thomas_fermi_error: empty evaluation region");
  return err;
}

// L-inf of |u/eps + a f1/mu| over the annulus r_in <= |x| <= r_out.
inline double outer_limit_check(const Field& u, const ModelConfig& c, double r_in, double r_out) {
  ensure_matching_grid(u, c.grid);
  const GridSpec& g = c.grid;
  const ModelGeometry geom = geometry(c);
  if (!(r_in > geom.rho) || !(r_out > r_in) || !(r_out < g.half_extent))
    throw std::domain_error("outer_limit_check: need rho < r_in < r_out < half_extent");
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x1(i), y = g.x2(j);
      const double r = std::hypot(x, y);
      if (r < r_in || r > r_out) continue;
      const double m = mu_eval(c, x, y);
      worst = std::max(worst, std::abs(u.at(i, j) / c.epsilon + c.a * f1_eval(c, x, y) / m));
    }
  return worst;
}

struct TanhFit {
  double amplitude_error = 0.0;
  double profile_error = 0.0;
  double crossing_t = 0.0;
};

// Compares the cross-section through the single zero crossing of row x2
// against sqrt(mu(0,x2)) tanh(s1 sqrt(mu(0,x2)/2)) on s1 in [-5, 5].
inline TanhFit cross_section_tanh_fit(const Field& u, const ModelConfig& c, double x2) {
  ensure_matching_grid(u, c.grid);
  const GridSpec& g = c.grid;
  const ModelGeometry geom = geometry(c);
  if (!(std::abs(x2) < geom.rho))
    throw std::domain_error("cross_section_tanh_fit: |x2| must be below rho");

  // locate strict sign changes along the sampled row
  std::vector<double> t(g.nx), v(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    t[i] = g.x1(i);
    v[i] = sample_bicubic(u, t[i], x2);
  }
  int crossings = 0;
  double tbar = 0.0;
  int last_sign = 0;
  double last_val = 0.0;
  double last_t = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const int s = v[i] > 0.0 ? 1 : (v[i] < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      ++crossings;
      tbar = last_t + (0.0 - last_val) * (t[i] - last_t) / (v[i] - last_val);
    }
    last_sign = s;
    last_val = v[i];
    last_t = t[i];
  }
  if (crossings != 1)
    throw std::runtime_error("cross_section_tanh_fit: row has " + std::to_string(crossings) +
                             " sign changes, need exactly 1");

  const double amp_ref = std::sqrt(std::max(mu_eval(c, 0.0, x2), 0.0));
  const double rate = std::sqrt(std::max(mu_eval(c, 0.0, x2), 0.0) / 2.0);
  const int n = 201;
  const double u_right = sample_bicubic(u, tbar + 5.0 * c.epsilon, x2);
  const double orient = u_right >= 0.0 ? 1.0 : -1.0;
  TanhFit fit;
  fit.crossing_t = tbar;
  for (int k = 0; k < n; ++k) {
    const double s1 = -5.0 + 10.0 * k / (n - 1);
    const double val = orient * sample_bicubic(u, tbar + c.epsilon * s1, x2);
    const double ref = amp_ref * std::tanh(s1 * rate);
    fit.profile_error = std::max(fit.profile_error, std::abs(val - ref));
  }
  const double u_left = sample_bicubic(u, tbar - 5.0 * c.epsilon, x2);
  const double saturation = std::tanh(5.0 * rate);
  fit.amplitude_error = std::abs(0.5 * orient * (u_right - u_left) / saturation - amp_ref);
  return fit;
}

// Fitted constant of the a-priori bound |u| <= K (sqrt(mu^+) + eps^(1/3)).
inline double apriori_bound_check(const Field& u, const ModelConfig& c) {
  ensure_matching_grid(u, c.grid);
  const GridSpec& g = c.grid;
  const double e13 = std::cbrt(c.epsilon);
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double ref = std::sqrt(std::max(mu_eval(c, g.x1(i), g.x2(j)), 0.0)) + e13;
      worst = std::max(worst, std::abs(u.at(i, j)) / ref);
    }
  return worst;
}

// Max over the given circle radii of the angular max-min spread of u.
inline double angular_variation(const Field& u, const ModelConfig& c,
                                const std::vector<double>& radii, int n_theta = 720) {
  ensure_matching_grid(u, c.grid);
  double worst = 0.0;
  for (double r : radii) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < n_theta; ++k) {
      const double th = 2.0 * M_PI * k / n_theta;
      const double val = sample_bicubic(u, r * std::cos(th), r * std::sin(th));
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace nematic
