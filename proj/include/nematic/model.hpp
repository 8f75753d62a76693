#pragma once
// model.hpp -- the forcing landscape mu, the radial force field f, derived
// geometry (rho, mu1), and hypothesis validation. Default instance is the
// Gaussian illumination profile; tabulated radial profiles are accepted too.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/numerics.hpp"

namespace nematic {

struct ToleranceSet {
  double residual_tol = 1e-7;     // stationarity, L-inf of the PDE residual
  double dt = 0.0;                // 0 selects the default step 0.5 h^2/eps^2 capped at 1
  int max_steps = 4000;
  double energy_stall_tol = 1e-15;  // relative energy change treated as a stall

  void validate() const {
    if (!(residual_tol > 0.0) || !(dt >= 0.0) || max_steps <= 0 || !(energy_stall_tol > 0.0))
      throw std::invalid_argument("ToleranceSet: all entries must be positive");
  }
};

enum class ProfileKind { gaussian, custom };

// Uniformly sampled mu_rad and f_rad on [0, r_max], cubic interpolation.
// f_rad is extended by zero beyond the table; mu_rad queries outside the
// table are an error (the bistable geometry must be fully covered).
struct CustomProfile {
  RadialTable mu;
  RadialTable f;

  CustomProfile() = default;
  CustomProfile(double r_max, std::vector<double> mu_samples, std::vector<double> f_samples)
      : mu(r_max, std::move(mu_samples)), f(r_max, std::move(f_samples)) {}
};

struct ModelConfig {
  double epsilon = 0.05;
  double a = 0.0;
  double mu0 = -0.5;
  double I0 = 1.0;
  double w = 1.0;
  ProfileKind profile = ProfileKind::gaussian;
  std::optional<CustomProfile> custom;
  GridSpec grid;
  ToleranceSet tol;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("ModelConfig: epsilon must be positive");
    if (!(a >= 0.0)) throw std::invalid_argument("ModelConfig: a must be nonnegative");
    if (profile == ProfileKind::gaussian) {
      if (!(mu0 < 0.0) || !(mu0 + I0 > 0.0) || !(I0 > 0.0))
        throw std::invalid_argument("ModelConfig: requires -I0 < mu0 < 0 (bistable disc nonempty)");
      if (!(w > 0.0)) throw std::invalid_argument("ModelConfig: w must be positive");
    } else if (!custom) {
      throw std::invalid_argument("ModelConfig: custom profile selected but no tables given");
    }
    grid.validate();
    tol.validate();
  }
};

struct ModelGeometry {
  double rho;        // unique zero of mu_rad
  double mu1;        // mu_rad'(rho) < 0
  double mu_origin;  // mu(0, 0)
};

// ---- radial profile evaluation ---------------------------------------------

inline double mu_rad(const ModelConfig& c, double r) {
  if (c.profile == ProfileKind::gaussian) return c.mu0 + c.I0 * std::exp(-(r * r) / (c.w * c.w));
  if (!c.custom->mu.covers(r))
    throw std::out_of_range("mu_rad: custom profile does not cover |x| = " + std::to_string(r));
  return c.custom->mu.value(r);
}

inline double mu_rad_deriv(const ModelConfig& c, double r) {
  if (c.profile == ProfileKind::gaussian)
    return -2.0 * r * c.I0 * std::exp(-(r * r) / (c.w * c.w)) / (c.w * c.w);
  if (!c.custom->mu.covers(r))
    throw std::out_of_range("mu_rad_deriv: custom profile does not cover |x| = " + std::to_string(r));
  return c.custom->mu.deriv(r);
}

inline double f_rad(const ModelConfig& c, double r) {
  if (c.profile == ProfileKind::gaussian)
    return (c.I0 / (c.w * c.w)) * r * std::exp(-(r * r) / (c.w * c.w));
  if (!c.custom->f.covers(r)) return 0.0;  // zero extension beyond the table
  return c.custom->f.value(r);
}

inline double f_rad_deriv(const ModelConfig& c, double r) {
  if (c.profile == ProfileKind::gaussian) {
    const double e = std::exp(-(r * r) / (c.w * c.w));
    return (c.I0 / (c.w * c.w)) * e * (1.0 - 2.0 * r * r / (c.w * c.w));
  }
  if (!c.custom->f.covers(r)) return 0.0;
  return c.custom->f.deriv(r);
}

// ---- point evaluation -------------------------------------------------------

inline double mu_eval(const ModelConfig& c, double x1, double x2) {
  return mu_rad(c, std::hypot(x1, x2));
}

// First component of f(x) = f_rad(|x|) x/|x|; zero at the origin (odd radial
// extension of f_rad).
inline double f1_eval(const ModelConfig& c, double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return 0.0;
  if (c.profile == ProfileKind::gaussian)
    return (c.I0 / (c.w * c.w)) * x1 * std::exp(-(r * r) / (c.w * c.w));
  return f_rad(c, r) * (x1 / r);
}

inline std::array<double, 2> f_eval(const ModelConfig& c, double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return {0.0, 0.0};
  if (c.profile == ProfileKind::gaussian) {
    const double s = (c.I0 / (c.w * c.w)) * std::exp(-(r * r) / (c.w * c.w));
    return {s * x1, s * x2};
  }
  const double s = f_rad(c, r) / r;
  return {s * x1, s * x2};
}

// ---- geometry ---------------------------------------------------------------

inline ModelGeometry geometry(const ModelConfig& c) {
  if (c.profile == ProfileKind::gaussian) {
    if (!(c.mu0 < 0.0) || !(c.mu0 + c.I0 > 0.0))
      throw std::domain_error("geometry: mu has no zero, need mu0 < 0 < mu0 + I0");
    const double rho = c.w * std::sqrt(std::log(c.I0 / (-c.mu0)));
    const double mu1 = -(2.0 * rho / (c.w * c.w)) * (-c.mu0);
    return {rho, mu1, c.mu0 + c.I0};
  }
  const double r_hi = c.custom->mu.r_max();
  double lo = 0.0;
  double hi = r_hi;
  double flo = mu_rad(c, lo);
  double fhi = mu_rad(c, hi);
  if (!(flo > 0.0) || !(fhi < 0.0))
    throw std::domain_error("geometry: custom mu_rad has no sign change on [0, r_max]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mu_rad(c, mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  const double rho = 0.5 * (lo + hi);
  const double step = std::min(c.custom->mu.spacing(), std::min(rho, r_hi - rho));
  const double mu1 = (mu_rad(c, rho + step) - mu_rad(c, rho - step)) / (2.0 * step);
  return {rho, mu1, mu_rad(c, 0.0)};
}

// ---- hypothesis validation --------------------------------------------------

struct HypothesisReport {
  bool mu_bounded = false;
  bool mu_monotone = false;       // mu_rad' < 0 on (0, R]
  bool mu_unique_zero = false;
  bool f_positive = false;        // f_rad > 0 on (0, R]
  bool f_integrable = false;      // finite samples; zero extension keeps f in L1 and Linf
  bool f_deriv0_positive = false; // needed for finiteness of the upper threshold
  std::vector<std::string> failures;

  bool ok() const { return mu_bounded && mu_monotone && mu_unique_zero && f_positive && f_integrable; }
};

inline HypothesisReport validate_hypotheses(const ModelConfig& c) {
  HypothesisReport rep;
  const double r_hi =
      c.profile == ProfileKind::gaussian ? 2.0 * c.grid.half_extent : c.custom->mu.r_max();
  const int n = 4096;
  bool monotone = true;
  bool positive = true;
  bool finite = true;
  int sign_changes = 0;
  double prev_mu = mu_rad(c, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double r = r_hi * static_cast<double>(k) / n;
    const double m = mu_rad(c, r);
    const double md = mu_rad_deriv(c, r);
    const double fv = f_rad(c, r);
    if (!std::isfinite(m) || !std::isfinite(md) || !std::isfinite(fv)) finite = false;
    if (!(md < 0.0)) monotone = false;
    if (!(fv > 0.0)) positive = false;
    if ((prev_mu > 0.0) != (m > 0.0)) ++sign_changes;
    prev_mu = m;
  }
  rep.mu_bounded = finite;
  rep.mu_monotone = monotone;
  rep.mu_unique_zero = (sign_changes == 1) && (mu_rad(c, 0.0) > 0.0);
  rep.f_positive = positive;
  rep.f_integrable = finite;
  const double d0 = c.profile == ProfileKind::gaussian
                        ? c.I0 / (c.w * c.w)
                        : c.custom->f.value(c.custom->f.spacing()) / c.custom->f.spacing();
  rep.f_deriv0_positive = d0 > 0.0;

  if (!rep.mu_bounded) rep.failures.push_back("mu or f not finite on the sampled range");
  if (!rep.mu_monotone) rep.failures.push_back("mu_rad' is not negative on (0, R]");
  if (!rep.mu_unique_zero) rep.failures.push_back("mu_rad does not have a unique zero");
  if (!rep.f_positive) rep.failures.push_back("f_rad is not positive on (0, R]");
  return rep;
}

// Node-by-node tables used by the solver and the energy quadrature.
inline std::vector<double> build_mu_grid(const ModelConfig& c) {
  const GridSpec& g = c.grid;
  std::vector<double> out(g.nodes());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out[static_cast<std::size_t>(j) * g.nx + i] = mu_eval(c, g.x1(i), g.x2(j));
  return out;
}

inline std::vector<double> build_f1_grid(const ModelConfig& c) {
  const GridSpec& g = c.grid;
  std::vector<double> out(g.nodes());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out[static_cast<std::size_t>(j) * g.nx + i] = f1_eval(c, g.x1(i), g.x2(j));
  return out;
}

}  // namespace nematic
