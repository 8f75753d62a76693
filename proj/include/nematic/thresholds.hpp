#pragma once
// thresholds.hpp -- critical forcing amplitudes: the shadow-wall threshold
// (infimum over the left half-disc), the standard-wall threshold (supremum),
// their per-slice versions, the integral sandwich bound between them, and the
// auxiliary sign functions beta.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nematic/model.hpp"
#include "nematic/numerics.hpp"

namespace nematic {

struct SliceThresholds {
  double x2 = 0.0;
  double a_star = 0.0;
  double a_star_sup = 0.0;
};

struct ThresholdReport {
  double a_star = 0.0;
  double a_star_sup = 0.0;
  double middle_bound = 0.0;
  std::array<double, 2> argmin{0.0, 0.0};
  std::array<double, 2> argmax{0.0, 0.0};
  std::vector<SliceThresholds> slices;
  double a_star_mesh_error = 0.0;
  double a_star_sup_mesh_error = 0.0;
};

namespace detail {

constexpr double kSqrt2 = 1.4142135623730951;

// |f1(t, x2)| sqrt(mu(t, x2)) for t <= 0 inside the disc.
inline double chord_integrand(const ModelConfig& c, double x2, double t) {
  const double r = std::hypot(t, x2);
  if (r == 0.0) return 0.0;
  const double m = std::max(mu_rad(c, r), 0.0);
  return f_rad(c, r) * (std::abs(t) / r) * std::sqrt(m);
}

// Integral of the chord integrand over [t_lo, t_hi]. When t_lo is the chord
// endpoint -sqrt(rho^2 - x2^2) the integrand vanishes like sqrt(t - t_lo);
// the substitution t = t_lo + xi^2 removes the square-root kink.
inline double chord_segment(const ModelConfig& c, double x2, double t_lo, double t_hi,
                            bool lo_is_rim, double rel_tol) {
  if (!(t_hi > t_lo)) return 0.0;
  if (!lo_is_rim)
    return adaptive_simpson_rel([&](double t) { return chord_integrand(c, x2, t); }, t_lo, t_hi,
                                rel_tol);
  const double xi_max = std::sqrt(t_hi - t_lo);
  return adaptive_simpson_rel(
      [&](double xi) { return 2.0 * xi * chord_integrand(c, x2, t_lo + xi * xi); }, 0.0, xi_max,
      rel_tol);
}

inline double mu32(const ModelConfig& c, double x2, double t) {
  const double m = std::max(mu_rad(c, std::hypot(t, x2)), 0.0);
  return m * std::sqrt(m);
}

// Limit of the a_* ratio as the chord endpoint is approached (0/0 with a
// finite value; the mesh itself excludes the rim point).
inline double rim_ratio_limit(const ModelConfig& c, const ModelGeometry& geom) {
  return kSqrt2 * (-geom.mu1) / (2.0 * f_rad(c, geom.rho));
}

// Limit of the a^* ratio as t -> 0^- (two rounds of L'Hopital).
inline double center_ratio_limit(const ModelConfig& c, double x2) {
  const double r = std::abs(x2);
  if (r < 1e-7) {
    const double mu2 = c.profile == ProfileKind::gaussian
                           ? -2.0 * c.I0 / (c.w * c.w)
                           : (mu_rad(c, 2e-4) - 2.0 * mu_rad(c, 1e-4) + mu_rad(c, 0.0)) / 1e-8;
    const double fp0 = f_rad_deriv(c, 0.0);
    if (!(fp0 > 0.0)) return std::numeric_limits<double>::infinity();
    return kSqrt2 * std::abs(mu2) / (2.0 * fp0);
  }
  const double fr = f_rad(c, r);
  if (!(fr > 0.0)) return std::numeric_limits<double>::infinity();
  return kSqrt2 * std::abs(mu_rad_deriv(c, r)) / (2.0 * fr);
}

struct SliceScan {
  double value = 0.0;
  double arg_t = 0.0;
};

// Per-slice infimum of sqrt2 mu^{3/2} / (3 int_{-chord}^{t} |f1| sqrt(mu)).
inline SliceScan slice_a_star(const ModelConfig& c, const ModelGeometry& geom, double x2, int n_t,
                              double rel_tol) {
  const double chord2 = geom.rho * geom.rho - x2 * x2;
  if (!(chord2 > 0.0)) throw std::domain_error("slice outside the bistable disc");
  const double chord = std::sqrt(chord2);
  const double t0 = -chord;
  std::vector<double> ts(n_t + 1), js(n_t + 1);
  ts[0] = t0;
  js[0] = 0.0;
  SliceScan best{rim_ratio_limit(c, geom), t0};
  for (int k = 1; k <= n_t; ++k) {
    ts[k] = t0 + chord * static_cast<double>(k) / n_t;
    if (k == n_t) ts[k] = 0.0;
    js[k] = js[k - 1] + chord_segment(c, x2, ts[k - 1], ts[k], k == 1, rel_tol);
    const double ratio = kSqrt2 * mu32(c, x2, ts[k]) / (3.0 * js[k]);
    if (ratio < best.value) best = {ratio, ts[k]};
  }
  // local refinement around the best mesh point
  int kb = 0;
  for (int k = 1; k <= n_t; ++k)
    if (ts[k] == best.arg_t) kb = k;
  if (kb > 0) {
    const int klo = kb > 1 ? kb - 1 : 1;
    const double t_lo = ts[klo];
    const double t_hi = ts[std::min(kb + 1, n_t)];
    auto ratio_at = [&](double t) {
      const double j = js[klo] + chord_segment(c, x2, t_lo, t, false, rel_tol);
      return kSqrt2 * mu32(c, x2, t) / (3.0 * j);
    };
    auto [targ, tval] = golden_section_min(ratio_at, t_lo, t_hi, 1e-11 * chord);
    if (tval < best.value) best = {tval, targ};
  }
  return best;
}

// Per-slice supremum of sqrt2 (mu(0,x2)^{3/2} - mu^{3/2}) / (3 int_t^0 ...).
inline SliceScan slice_a_star_sup(const ModelConfig& c, const ModelGeometry& geom, double x2,
                                  int n_t, double rel_tol) {
  const double chord2 = geom.rho * geom.rho - x2 * x2;
  if (!(chord2 > 0.0)) throw std::domain_error("slice outside the bistable disc");
  const double chord = std::sqrt(chord2);
  const double t0 = -chord;
  const double m0 = mu32(c, x2, 0.0);
  std::vector<double> ts(n_t + 1), ss(n_t + 1);
  // ts runs 0 = ts[0] down to t0 = ts[n_t]; ss[k] = int_{ts[k]}^{0}
  ts[0] = 0.0;
  ss[0] = 0.0;
  SliceScan best{center_ratio_limit(c, x2), 0.0};
  for (int k = 1; k <= n_t; ++k) {
    ts[k] = -chord * static_cast<double>(k) / n_t;
    if (k == n_t) ts[k] = t0;
    ss[k] = ss[k - 1] + chord_segment(c, x2, ts[k], ts[k - 1], k == n_t, rel_tol);
    const double ratio = kSqrt2 * (m0 - mu32(c, x2, ts[k])) / (3.0 * ss[k]);
    if (ratio > best.value) best = {ratio, ts[k]};
  }
  int kb = 0;
  for (int k = 1; k <= n_t; ++k)
    if (ts[k] == best.arg_t) kb = k;
  if (kb > 0) {
    const int klo = kb > 1 ? kb - 1 : 1;
    const double t_hi = ts[klo];               // closer to 0
    const double t_lo = ts[std::min(kb + 1, n_t)];  // more negative
    auto neg_ratio_at = [&](double t) {
      const double s = ss[klo] + chord_segment(c, x2, t, t_hi, false, rel_tol);
      return -kSqrt2 * (m0 - mu32(c, x2, t)) / (3.0 * s);
    };
    auto [targ, tval] = golden_section_min(neg_ratio_at, t_lo, t_hi, 1e-11 * chord);
    if (-tval > best.value) best = {-tval, targ};
  }
  return best;
}

}  // namespace detail

// Integral of g over [a, b] where g vanishes like sqrt(b - r) at b.
template <class F>
double integrate_sqrt_end(const F& g, double a, double b, double rel_tol = 1e-10) {
  if (!(b > a)) return 0.0;
  const double m = b - 0.2 * (b - a);
  const double head = adaptive_simpson_rel(g, a, m, rel_tol);
  const double xi_max = std::sqrt(b - m);
  const double tail = adaptive_simpson_rel([&](double xi) { return 2.0 * xi * g(b - xi * xi); },
                                           0.0, xi_max, rel_tol);
  return head + tail;
}

// The (integral) bound sandwiched between the two thresholds:
// 2 sqrt2 int_{|r|<rho} mu^{3/2} dr / (3 int_disc |f1| sqrt(mu)), with the
// angular factor int |cos| = 4 evaluated analytically.
inline double threshold_middle_bound(const ModelConfig& c) {
  const ModelGeometry geom = geometry(c);
  const double num = 2.0 * detail::kSqrt2 * 2.0 *
                     integrate_sqrt_end(
                         [&](double r) {
                           const double m = std::max(mu_rad(c, r), 0.0);
                           return m * std::sqrt(m);
                         },
                         0.0, geom.rho);
  const double den = 3.0 * 4.0 *
                     integrate_sqrt_end(
                         [&](double r) {
                           return f_rad(c, r) * std::sqrt(std::max(mu_rad(c, r), 0.0)) * r;
                         },
                         0.0, geom.rho);
  return num / den;
}

// Per-slice thresholds a_*(x2), a^*(x2) for |x2| < rho.
inline std::vector<SliceThresholds> threshold_slices(const ModelConfig& c,
                                                     const std::vector<double>& x2_values,
                                                     int n_t = 257, double rel_tol = 1e-9) {
  c.validate();
  const ModelGeometry geom = geometry(c);
  std::vector<SliceThresholds> out;
  for (double x2 : x2_values) {
    if (!(std::abs(x2) < geom.rho))
      throw std::domain_error("threshold_slices: |x2| must be below rho");
    SliceThresholds s;
    s.x2 = x2;
    s.a_star = detail::slice_a_star(c, geom, x2, n_t, rel_tol).value;
    s.a_star_sup = detail::slice_a_star_sup(c, geom, x2, n_t, rel_tol).value;
    out.push_back(s);
  }
  return out;
}

namespace detail {

struct GlobalScan {
  double value = 0.0;
  std::array<double, 2> arg{0.0, 0.0};
};

template <bool kSup>
GlobalScan global_threshold(const ModelConfig& c, const ModelGeometry& geom, int n_x2, int n_t,
                            double rel_tol) {
  auto slice_value = [&](double x2) {
    return kSup ? slice_a_star_sup(c, geom, x2, n_t, rel_tol)
                : slice_a_star(c, geom, x2, n_t, rel_tol);
  };
  const double edge = geom.rho * (1.0 - 1e-12);
  GlobalScan best;
  best.value = kSup ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  std::vector<double> xs(n_x2);
  int jb = 0;
  for (int j = 0; j < n_x2; ++j) {
    // Chebyshev layout clusters slices near the rim where the ratios steepen.
    xs[j] = edge * std::cos(M_PI * (j + 0.5) / n_x2);
    const SliceScan s = slice_value(xs[j]);
    const bool better = kSup ? s.value > best.value : s.value < best.value;
    if (better) {
      best.value = s.value;
      best.arg = {s.arg_t, xs[j]};
      jb = j;
    }
  }
  const double lo = jb + 1 < n_x2 ? xs[jb + 1] : -edge;  // xs decreases with j
  const double hi = jb > 0 ? xs[jb - 1] : edge;
  auto objective = [&](double x2) {
    const double v = slice_value(x2).value;
    return kSup ? -v : v;
  };
  auto [xarg, xval] = golden_section_min(objective, lo, hi, 1e-10 * geom.rho, 120);
  const double refined = kSup ? -xval : xval;
  const bool better = kSup ? refined > best.value : refined < best.value;
  if (better) {
    const SliceScan s = slice_value(xarg);
    best.value = s.value;
    best.arg = {s.arg_t, xarg};
  }
  return best;
}

}  // namespace detail

// Shadow-wall threshold: infimum over the left half-disc.
inline double threshold_a_star(const ModelConfig& c, int n_x2 = 65, int n_t = 193,
                               double rel_tol = 1e-9) {
  c.validate();
  const ModelGeometry geom = geometry(c);
  return detail::global_threshold<false>(c, geom, n_x2, n_t, rel_tol).value;
}

// Standard-wall threshold: supremum over the left half-disc. Finite whenever
// f_rad'(0) > 0; computed regardless, with the caller warned via the report.
inline double threshold_a_star_sup(const ModelConfig& c, int n_x2 = 65, int n_t = 193,
                                   double rel_tol = 1e-9) {
  c.validate();
  const ModelGeometry geom = geometry(c);
  return detail::global_threshold<true>(c, geom, n_x2, n_t, rel_tol).value;
}

// Auxiliary sign functions. beta_star vanishes on the rim and is nonnegative
// on the left half-disc exactly when a <= a_*; beta_star_sup vanishes on
// x1 = 0 and is nonpositive exactly when a >= a^*.
inline std::pair<double, double> beta_functions(const ModelConfig& c, double a,
                                                std::array<double, 2> x, double rel_tol = 1e-9) {
  const ModelGeometry geom = geometry(c);
  const double x1 = x[0], x2 = x[1];
  const double r = std::hypot(x1, x2);
  if (x1 > 1e-12 || r > geom.rho * (1.0 + 1e-9))
    throw std::domain_error("beta_functions: point outside the closed left half-disc");
  const double chord = std::sqrt(std::max(geom.rho * geom.rho - x2 * x2, 0.0));
  const double t0 = -chord;
  const double j_lo = detail::chord_segment(c, x2, t0, std::min(x1, 0.0), true, rel_tol);
  const double s_hi = detail::chord_segment(c, x2, std::min(x1, 0.0), 0.0, false, rel_tol);
  const double m = detail::mu32(c, x2, x1);
  const double m0 = detail::mu32(c, x2, 0.0);
  const double beta_star = detail::kSqrt2 / 3.0 * m - a * j_lo;
  const double beta_sup = detail::kSqrt2 / 3.0 * (m0 - m) - a * s_hi;
  return {beta_star, beta_sup};
}

// Full report: global thresholds with refinement error bars, the sandwich
// middle bound, per-slice values, and the extremal points.
inline ThresholdReport thresholds_report(const ModelConfig& c, int n_x2 = 65, int n_t = 193,
                                         double rel_tol = 1e-9, int n_slices = 21) {
  c.validate();
  const ModelGeometry geom = geometry(c);
  ThresholdReport rep;
  const auto lo = detail::global_threshold<false>(c, geom, n_x2, n_t, rel_tol);
  const auto hi = detail::global_threshold<true>(c, geom, n_x2, n_t, rel_tol);
  const auto lo_half = detail::global_threshold<false>(c, geom, n_x2 / 2, n_t / 2, rel_tol);
  const auto hi_half = detail::global_threshold<true>(c, geom, n_x2 / 2, n_t / 2, rel_tol);
  rep.a_star = lo.value;
  rep.a_star_sup = hi.value;
  rep.argmin = lo.arg;
  rep.argmax = hi.arg;
  rep.a_star_mesh_error = std::abs(lo.value - lo_half.value);
  rep.a_star_sup_mesh_error = std::abs(hi.value - hi_half.value);
  rep.middle_bound = threshold_middle_bound(c);
  std::vector<double> xs;
  for (int j = 0; j < n_slices; ++j)
    xs.push_back(geom.rho * (-1.0 + 2.0 * (j + 1.0) / (n_slices + 1.0)));
  rep.slices = threshold_slices(c, xs, n_t, rel_tol);
  return rep;
}

}  // namespace nematic
