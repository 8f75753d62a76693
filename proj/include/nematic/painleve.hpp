#pragma once
// painleve.hpp -- Airy function, the Hastings-McLeod solution of Painleve II
// (homogeneous and forced), and the boundary-layer rescaling used to compare
// 2D minimizers against the 1D profile.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/model.hpp"
#include "nematic/profile1d.hpp"

namespace nematic {

namespace detail {

inline constexpr double kAi0 = 0.35502805388781723926;    // Ai(0)
inline constexpr double kAip0 = -0.25881940379280679841;  // Ai'(0)

// Maclaurin solutions of y'' = x y: f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1.
inline void airy_series_fg(double x, double& f, double& fp, double& g, double& gp) {
  const double x3 = x * x * x;
  f = 1.0;
  fp = 0.0;
  g = x;
  gp = 1.0;
  double tf = 1.0, tg = x;
  for (int k = 1; k <= 60; ++k) {
    tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
    tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
    f += tf;
    g += tg;
    if (x != 0.0) {
      fp += tf * (3.0 * k) / x;
      gp += tg * (3.0 * k + 1.0) / x;
    }
    if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::max(std::abs(g), 1.0))
      break;
  }
}

// One recentered Taylor step for y'' = x y: degree ~50 expansion about s0.
// Coefficients obey t_{n+2} = (s0 t_n + t_{n-1}) / ((n+1)(n+2)), t_{-1} = 0.
inline void airy_taylor_step(double s0, double h, double& y, double& yp) {
  constexpr int N = 52;
  double t[N + 1];
  t[0] = y;
  t[1] = yp;
  for (int n = 0; n + 2 <= N; ++n) {
    const double prev = n == 0 ? 0.0 : t[n - 1];
    t[n + 2] = (s0 * t[n] + prev) / ((n + 1.0) * (n + 2.0));
  }
  double sum = 0.0;
  double dsum = 0.0;
  for (int n = N; n >= 1; --n) {
    sum = sum * h + t[n];
    dsum = dsum * h + n * t[n];
  }
  y = sum * h + t[0];
  yp = dsum;
}

}  // namespace detail

// Airy Ai on [-20, 20]: Maclaurin series for |s| <= 2, high-order Taylor
// marching of y'' = s y initialized from the series elsewhere.
inline double airy_ai(double s) {
  if (!(s >= -20.0 - 1e-9 && s <= 20.0 + 1e-9))
    throw std::out_of_range("airy_ai: argument outside the validated range [-20, 20]");
  double f, fp, g, gp;
  if (std::abs(s) <= 2.0) {
    detail::airy_series_fg(s, f, fp, g, gp);
    return detail::kAi0 * f + detail::kAip0 * g;
  }
  const double start = s > 0.0 ? 2.0 : -2.0;
  detail::airy_series_fg(start, f, fp, g, gp);
  double y = detail::kAi0 * f + detail::kAip0 * g;
  double yp = detail::kAi0 * fp + detail::kAip0 * gp;
  double pos = start;
  const double dir = s > 0.0 ? 1.0 : -1.0;
  while (std::abs(s - pos) > 0.0) {
    double h = 0.25 / (1.0 + std::abs(pos) / 8.0);
    h = std::min(h, std::abs(s - pos));
    detail::airy_taylor_step(pos, dir * h, y, yp);
    pos += dir * h;
  }
  return y;
}

namespace detail {

// Damped Newton on the centered-difference collocation of
// y'' = s y + 2 y^3 + alpha with fixed endpoint values.
inline void pii_newton(std::vector<double>& y, const std::vector<double>& s, double alpha,
                       double h, int max_iter = 50) {
  const std::size_t n = y.size();
  std::vector<double> F(n, 0.0), diag(n), rhs(n), delta(n), cprime(n);
  const double ih2 = 1.0 / (h * h);
  auto residual = [&](const std::vector<double>& v, std::vector<double>& out) {
    double norm = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * ih2 - s[i] * v[i] - 2.0 * v[i] * v[i] * v[i] -
               alpha;
      norm = std::max(norm, std::abs(out[i]));
    }
    return norm;
  };
  double fnorm = residual(y, F);
  for (int it = 0; it < max_iter; ++it) {
    // tridiagonal solve: J delta = -F, sub = sup = 1/h^2
    for (std::size_t i = 1; i + 1 < n; ++i) diag[i] = -2.0 * ih2 - s[i] - 6.0 * y[i] * y[i];
    cprime[1] = ih2 / diag[1];
    rhs[1] = -F[1] / diag[1];
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double m = diag[i] - ih2 * cprime[i - 1];
      cprime[i] = ih2 / m;
      rhs[i] = (-F[i] - ih2 * rhs[i - 1]) / m;
    }
    delta[n - 2] = rhs[n - 2];
    for (std::size_t i = n - 3; i >= 1; --i) delta[i] = rhs[i] - cprime[i] * delta[i + 1];

    double step = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) step = std::max(step, std::abs(delta[i]));
    double lambda = 1.0;
    std::vector<double> trial = y;
    double fnew = 0.0;
    for (int back = 0; back < 30; ++back) {
      for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = y[i] + lambda * delta[i];
      fnew = residual(trial, rhs);  // rhs reused as scratch
      if (fnew < fnorm * (1.0 - 0.25 * lambda) || fnew < 1e-13) break;
      lambda *= 0.5;
    }
    y.swap(trial);
    fnorm = residual(y, F);
    if (lambda == 1.0 && step < 1e-12) return;
  }
  if (fnorm > 1e-9)
    throw std::runtime_error("painleve: Newton collocation did not converge (residual " +
                             std::to_string(fnorm) + ")");
}

// Real root of s y + 2 y^3 + alpha = 0 on the sqrt(|s|/2) branch.
inline double pii_left_root(double s, double alpha) {
  double y = std::sqrt(std::abs(s) / 2.0);
  for (int it = 0; it < 100; ++it) {
    const double g = s * y + 2.0 * y * y * y + alpha;
    const double gp = s + 6.0 * y * y;
    const double step = g / gp;
    y -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return y;
}

inline Profile1D pii_solve(double alpha, double s_min, double s_max, std::size_t n) {
  if (!(s_min <= -8.0) || !(s_max >= 6.0))
    throw std::invalid_argument("painleve: domain must contain [-8, 6]");
  if (n < 201) throw std::invalid_argument("painleve: need at least 201 nodes");
  const double h = (s_max - s_min) / static_cast<double>(n - 1);
  std::vector<double> s(n), y(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = s_min + h * static_cast<double>(i);
  // initial guess: smooth blend of the parabolic branch and the Airy tail
  for (std::size_t i = 0; i < n; ++i)
    y[i] = std::sqrt(0.25 * (std::hypot(s[i], 1.6) - s[i]));

  // continuation in alpha, steps of at most 0.1
  const int n_cont = std::max(1, static_cast<int>(std::ceil(std::abs(alpha) / 0.1)));
  for (int k = 1; k <= n_cont; ++k) {
    const double ak = alpha * static_cast<double>(k) / n_cont;
    y[0] = pii_left_root(s_min, ak);
    y[n - 1] = airy_ai(s_max) - ak / s_max;
    try {
      pii_newton(y, s, ak, h);
    } catch (const std::exception& e) {
      throw std::runtime_error("painleve: continuation failed between alpha=" +
                               std::to_string(alpha * (k - 1.0) / n_cont) + " and alpha=" +
                               std::to_string(ak) + ": " + e.what());
    }
  }

  Profile1D out;
  out.s_min = s_min;
  out.s_max = s_max;
  out.values = std::move(y);
  std::vector<double> d(n);
  d[0] = (-3.0 * out.values[0] + 4.0 * out.values[1] - out.values[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (out.values[i + 1] - out.values[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * out.values[n - 1] - 4.0 * out.values[n - 2] + out.values[n - 3]) / (2.0 * h);
  out.derivative_values = std::move(d);
  return out;
}

}  // namespace detail

// Hastings-McLeod solution of y'' = s y + 2 y^3 by Newton collocation with
// the asymptotic boundary values y(s_min) = sqrt(|s_min|/2), y(s_max) = Ai(s_max).
inline Profile1D hastings_mcleod(double s_min = -12.0, double s_max = 8.0, std::size_t n = 4001) {
  return detail::pii_solve(0.0, s_min, s_max, n);
}

// Forced Painleve II y'' = s y + 2 y^3 + alpha, bounded branch, continuation
// in alpha from the Hastings-McLeod solution.
inline Profile1D painleve_solve_alpha(double alpha, double s_min = -12.0, double s_max = 8.0,
                                      std::size_t n = 4001) {
  return detail::pii_solve(alpha, s_min, s_max, n);
}

// Max centered-difference residual of the collocation equations.
inline double painleve_collocation_residual(const Profile1D& y, double alpha) {
  const double h = y.ds();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < y.n(); ++i) {
    const double s = y.s(i);
    const double v = y.values[i];
    const double r = (y.values[i - 1] - 2.0 * v + y.values[i + 1]) / (h * h) - s * v -
                     2.0 * v * v * v - alpha;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// Samples a converged 2D field through the rim point rho e^{i theta} in the
// radial direction and applies the boundary-layer scaling
// w(s1) = 2^{-1/2} (-mu1 eps)^{-1/3} v(xi + eps^{2/3} s1 e^{i theta} / (-mu1)^{1/3}).
inline Profile1D rescale_boundary_layer(const Field& u, const ModelConfig& c, double theta,
                                        double s_lo = -6.0, double s_hi = 6.0,
                                        std::size_t n = 241) {
  const ModelGeometry geom = geometry(c);
  const double eps23 = std::pow(c.epsilon, 2.0 / 3.0);
  const double stretch = eps23 / std::cbrt(-geom.mu1);
  const double amp = 1.0 / (std::sqrt(2.0) * std::cbrt(-geom.mu1 * c.epsilon));
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  Profile1D out;
  out.s_min = s_lo;
  out.s_max = s_hi;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s1 = s_lo + (s_hi - s_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    const double r = geom.rho + stretch * s1;
    out.values[k] = amp * sample_bicubic(u, r * cs, r * sn);
  }
  return out;
}

// Sign-matched L-inf distance between a rescaled profile and the bounded
// Painleve II solution at the matching alpha.
inline double boundary_layer_compare(const Profile1D& profile, double alpha) {
  const Profile1D y = detail::pii_solve(alpha, -12.0, 8.0, 4001);
  double e_plus = 0.0;
  double e_minus = 0.0;
  for (std::size_t k = 0; k < profile.n(); ++k) {
    const double s = profile.s(k);
    const double ref = y.value_at(s);
    e_plus = std::max(e_plus, std::abs(profile.values[k] - ref));
    e_minus = std::max(e_minus, std::abs(profile.values[k] + ref));
  }
  return std::min(e_plus, e_minus);
}

}  // namespace nematic
