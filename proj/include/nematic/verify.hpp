#pragma once
// verify.hpp -- the built-in verification matrix: threshold exactness and
// bounds, energy identities, regime classification, asymptotic limit checks,
// Painleve II properties, and oracle cross-checks. Used by `nwall verify`
// and by the acceptance test binary; every tolerance is pinned here.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nematic/energy.hpp"
#include "nematic/model.hpp"
#include "nematic/painleve.hpp"
#include "nematic/solver.hpp"
#include "nematic/thresholds.hpp"
#include "nematic/walls.hpp"

namespace nematic {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace verify_detail {

inline std::string num(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

}  // namespace verify_detail

// ---- independent brute-force threshold oracle --------------------------------
//
// Dense Chebyshev slice scan with composite-Simpson prefix integrals; no
// adaptivity, no local refinement, no closed-form limit values. Slow but
// entirely independent of the production threshold path.
struct OracleThresholds {
  double a_star = 0.0;
  double a_star_sup = 0.0;
};

inline OracleThresholds oracle_thresholds(const ModelConfig& c, int n_x2 = 1001, int n_t = 16384) {
  const ModelGeometry geom = geometry(c);
  const double sqrt2 = 1.4142135623730951;
  OracleThresholds out;
  out.a_star = std::numeric_limits<double>::infinity();
  out.a_star_sup = -out.a_star;
  std::vector<double> g(n_t + 1), m32(n_t + 1);
  for (int j = 0; j < n_x2; ++j) {
    const double x2 = geom.rho * (1.0 - 1e-12) * std::cos(M_PI * (j + 0.5) / n_x2);
    const double chord = std::sqrt(std::max(geom.rho * geom.rho - x2 * x2, 0.0));
    const double t0 = -chord;
    const double h = chord / n_t;
    for (int k = 0; k <= n_t; ++k) {
      const double t = t0 + h * k;
      const double r = std::hypot(t, x2);
      const double m = std::max(mu_rad(c, r), 0.0);
      g[k] = r > 0.0 ? f_rad(c, r) * (std::abs(t) / r) * std::sqrt(m) : 0.0;
      m32[k] = m * std::sqrt(m);
    }
    // prefix Simpson over node pairs; ratios at even nodes
    double acc = 0.0;
    for (int k = 2; k <= n_t; k += 2) {
      acc += h / 3.0 * (g[k - 2] + 4.0 * g[k - 1] + g[k]);
      const double ratio = sqrt2 * m32[k] / (3.0 * acc);
      out.a_star = std::min(out.a_star, ratio);
    }
    // suffix Simpson for the supremum ratio
    double sacc = 0.0;
    const double top = m32[n_t];
    for (int k = n_t - 2; k >= 0; k -= 2) {
      sacc += h / 3.0 * (g[k] + 4.0 * g[k + 1] + g[k + 2]);
      const double ratio = sqrt2 * (top - m32[k]) / (3.0 * sacc);
      out.a_star_sup = std::max(out.a_star_sup, ratio);
    }
  }
  return out;
}

// ---- acceptance context -------------------------------------------------------

class AcceptanceContext {
 public:
  explicit AcceptanceContext(int jobs = 0) : jobs_(jobs) {}

  static ModelConfig gaussian_config(double eps, double a) {
    ModelConfig c;
    c.epsilon = eps;
    c.a = a;
    c.mu0 = -0.5;
    c.I0 = 1.0;
    c.w = 1.0;
    c.grid.half_extent = 3.0;
    if (eps >= 0.075) {
      c.grid.nx = c.grid.ny = 97;
      c.tol.max_steps = 2000;
    } else if (eps >= 0.0375) {
      c.grid.nx = c.grid.ny = 193;
      c.tol.max_steps = 3000;
    } else {
      c.grid.nx = c.grid.ny = 385;
      c.tol.max_steps = 3500;
    }
    c.tol.residual_tol = 1e-7;
    return c;
  }

  static ModelConfig parabolic_profile() {
    ModelConfig c = gaussian_config(0.05, 0.0);
    c.profile = ProfileKind::custom;
    const int n = 513;
    std::vector<double> mu(n), f(n);
    for (int k = 0; k < n; ++k) {
      const double r = 1.5 * k / (n - 1);
      mu[k] = 1.0 - r * r;
      f[k] = r / (1.0 + r * r);
    }
    c.custom.emplace(1.5, std::move(mu), std::move(f));
    return c;
  }

  static ModelConfig cosine_profile() {
    ModelConfig c = gaussian_config(0.05, 0.0);
    c.profile = ProfileKind::custom;
    const int n = 513;
    std::vector<double> mu(n), f(n);
    for (int k = 0; k < n; ++k) {
      const double r = 2.4 * k / (n - 1);
      mu[k] = std::cos(r) - 0.2;
      f[k] = r * std::exp(-r);
    }
    c.custom.emplace(2.4, std::move(mu), std::move(f));
    return c;
  }

  const SolveResult& minimizer(double eps, double a) {
    const auto key = std::make_pair(eps, a);
    auto it = runs_.find(key);
    if (it == runs_.end())
      it = runs_.emplace(key, minimize_multistart(gaussian_config(eps, a), 42, jobs_)).first;
    return it->second;
  }

  const ThresholdReport& gaussian_thresholds() {
    if (!gauss_thresholds_) gauss_thresholds_ = thresholds_report(gaussian_config(0.05, 0.0));
    return *gauss_thresholds_;
  }

  const std::map<std::pair<double, double>, SolveResult>& runs() const { return runs_; }

 private:
  int jobs_;
  std::map<std::pair<double, double>, SolveResult> runs_;
  std::optional<ThresholdReport> gauss_thresholds_;
};

// ---- individual checks ---------------------------------------------------------

namespace verify_detail {

inline CheckResult check_threshold_exactness(AcceptanceContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdReport& rep = ctx.gaussian_thresholds();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double sqrt2 = std::sqrt(2.0);
  const double e1 = std::abs(rep.a_star - sqrt2);
  const double e2 = std::abs(rep.a_star_sup - sqrt2);
  CheckResult r;
  r.name = "thresholds-gradient-exact";
  r.pass = e1 <= 1e-6 && e2 <= 1e-6 && secs < 10.0;
  r.detail = "a_*=" + num(rep.a_star, 12) + " a^*=" + num(rep.a_star_sup, 12) +
             " |err|=(" + num(e1, 3) + "," + num(e2, 3) + ") time=" + num(secs, 3) + "s";
  return r;
}

inline CheckResult check_sandwich() {
  CheckResult r;
  r.name = "sandwich-bound";
  r.pass = true;
  const double tol = 1e-6;  // quadrature allowance; the Gaussian case is a triple equality
  std::vector<std::pair<std::string, ModelConfig>> cases;
  cases.emplace_back("gaussian", AcceptanceContext::gaussian_config(0.05, 0.0));
  cases.emplace_back("parabolic", AcceptanceContext::parabolic_profile());
  cases.emplace_back("cosine", AcceptanceContext::cosine_profile());
  for (auto& [label, cfg] : cases) {
    const double lo = threshold_a_star(cfg);
    const double mid = threshold_middle_bound(cfg);
    const double hi = threshold_a_star_sup(cfg);
    const bool ok = lo <= mid + tol && mid <= hi + tol;
    r.pass = r.pass && ok;
    r.detail += label + ": " + num(lo, 9) + " <= " + num(mid, 9) + " <= " + num(hi, 9) +
                (ok ? "  " : " VIOLATED  ");
  }
  return r;
}

inline CheckResult check_energy_identity(AcceptanceContext& ctx,
                                         const std::vector<std::pair<double, double>>& points) {
  CheckResult r;
  r.name = "energy-identity";
  r.pass = true;
  for (auto [eps, a] : points) {
    const SolveResult& run = ctx.minimizer(eps, a);
    const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, a);
    const double res = energy_identity_residual(run.field, cfg);
    const double res_forced = weak_form_identity_residual(run.field, cfg);
    const bool ok = res < 1e-3;
    r.pass = r.pass && ok;
    r.detail += "(eps=" + num(eps, 3) + ",a=" + num(a, 3) + "): " + num(res, 3) +
                (ok ? "" : " FAIL") + " [with forcing term: " + num(res_forced, 3) + "]  ";
  }
  return r;
}

inline CheckResult check_renormalized_bound(AcceptanceContext& ctx) {
  CheckResult r;
  r.name = "renormalized-upper-bound";
  r.pass = true;
  const ModelConfig base = AcceptanceContext::gaussian_config(0.025, 0.0);
  const ModelGeometry geom = geometry(base);
  const double t1 = 2.0 * std::sqrt(2.0) / 3.0 * 2.0 *
                    integrate_sqrt_end(
                        [&](double x) {
                          const double m = std::max(mu_rad(base, x), 0.0);
                          return m * std::sqrt(m);
                        },
                        0.0, geom.rho);
  const double t2 = 4.0 * integrate_sqrt_end(
                              [&](double x) {
                                return f_rad(base, x) * std::sqrt(std::max(mu_rad(base, x), 0.0)) * x;
                              },
                              0.0, geom.rho);
  for (double a : {0.0, 0.7, 2.1}) {
    const SolveResult& run = ctx.minimizer(0.025, a);
    const double bound = std::min(0.0, t1 - a * t2);
    const double val = run.energy.renormalized;
    const bool ok = val <= bound + 0.05;
    r.pass = r.pass && ok;
    r.detail += "a=" + num(a, 3) + ": E_ren=" + num(val, 4) + " bound=" + num(bound, 4) +
                "+0.05" + (ok ? "  " : " FAIL  ");
  }
  return r;
}

inline CheckResult check_regimes(AcceptanceContext& ctx, double eps) {
  CheckResult r;
  r.name = "regime-classification";
  const ThresholdReport& rep = ctx.gaussian_thresholds();
  bool ok_all = true;

  {
    const SolveResult& run = ctx.minimizer(eps, 0.7);
    const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 0.7);
    const RegimeVerdict v =
        wall_deviation(extract_zero_set(run.field), cfg, 0.7, rep);
    const bool ok = v.regime == WallRegime::shadow_wall && v.deviation_to_predicted <= 5.0 * eps;
    ok_all = ok_all && ok;
    r.detail += "a=0.7: " + std::string(to_string(v.regime)) + " dev=" +
                num(v.deviation_to_predicted, 4) + "/" + num(5.0 * eps, 3) + (ok ? "  " : " FAIL  ");
  }
  {
    const SolveResult& run = ctx.minimizer(eps, 2.1);
    const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 2.1);
    const RegimeVerdict v =
        wall_deviation(extract_zero_set(run.field), cfg, 2.1, rep);
    const bool ok = v.regime == WallRegime::standard_wall && v.deviation_to_predicted <= 5.0 * eps;
    ok_all = ok_all && ok;
    r.detail += "a=2.1: " + std::string(to_string(v.regime)) + " dev=" +
                num(v.deviation_to_predicted, 4) + (ok ? "  " : " FAIL  ");
  }
  {
    const SolveResult& run = ctx.minimizer(eps, 0.0);
    const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 0.0);
    const ModelGeometry geom = geometry(cfg);
    const RegimeVerdict v = wall_deviation(extract_zero_set(run.field), cfg, 0.0, rep);
    const double ang = angular_variation(run.field, cfg,
                                         {0.25 * geom.rho, 0.5 * geom.rho, 0.75 * geom.rho});
    const bool ok = v.regime == WallRegime::no_wall && ang < 1e-3;
    ok_all = ok_all && ok;
    r.detail += "a=0: " + std::string(to_string(v.regime)) + " angular=" + num(ang, 3) +
                (ok ? "" : " FAIL");
  }
  r.pass = ok_all;
  return r;
}

inline CheckResult check_tf_convergence(AcceptanceContext& ctx) {
  CheckResult r;
  r.name = "thomas-fermi-convergence";
  std::vector<double> errs;
  for (double eps : {0.1, 0.05, 0.025}) {
    const SolveResult& run = ctx.minimizer(eps, 0.0);
    errs.push_back(
        thomas_fermi_error(run.field, AcceptanceContext::gaussian_config(eps, 0.0), 0.8));
  }
  r.pass = errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 0.05;
  r.detail = "errors " + num(errs[0], 4) + " > " + num(errs[1], 4) + " > " + num(errs[2], 4) +
             " (final < 0.05)";
  return r;
}

inline CheckResult check_outer_regime(AcceptanceContext& ctx) {
  CheckResult r;
  r.name = "outer-linear-regime";
  const ModelGeometry geom = geometry(AcceptanceContext::gaussian_config(0.025, 1.0));
  std::vector<double> vals;
  for (double eps : {0.1, 0.05, 0.025}) {
    const SolveResult& run = ctx.minimizer(eps, 1.0);
    vals.push_back(outer_limit_check(run.field, AcceptanceContext::gaussian_config(eps, 1.0),
                                     1.2 * geom.rho, 1.5 * geom.rho));
  }
  r.pass = vals[2] < 0.05;
  r.detail = "max |v/eps + a f1/mu| on 1.2rho..1.5rho = " + num(vals[2], 4) +
             " (< 0.05); trend over eps {0.1,0.05,0.025}: " + num(vals[0], 4) + ", " +
             num(vals[1], 4) + ", " + num(vals[2], 4);
  return r;
}

inline CheckResult check_tanh_cross_section(AcceptanceContext& ctx, double eps) {
  CheckResult r;
  r.name = "tanh-cross-section";
  const SolveResult& run = ctx.minimizer(eps, 2.1);
  const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 2.1);
  const ModelGeometry geom = geometry(cfg);
  bool ok_all = true;
  for (double frac : {0.0, 0.4, -0.4}) {
    const double x2 = frac * geom.rho;
    const double tol = 0.05 * std::sqrt(mu_eval(cfg, 0.0, x2));
    const TanhFit fit = cross_section_tanh_fit(run.field, cfg, x2);
    const bool ok = fit.profile_error < tol;
    ok_all = ok_all && ok;
    r.detail += "x2=" + num(x2, 3) + ": err=" + num(fit.profile_error, 4) + "/" + num(tol, 4) +
                (ok ? "  " : " FAIL  ");
  }
  const double aniso = run.energy.anisotropy_x2;
  const bool ok_a = aniso < 0.05;
  ok_all = ok_all && ok_a;
  r.detail += "anisotropy=" + num(aniso, 4) + "/0.05" + (ok_a ? "" : " FAIL");
  r.pass = ok_all;
  return r;
}

inline CheckResult check_hastings_mcleod() {
  CheckResult r;
  r.name = "hastings-mcleod";
  const Profile1D h = hastings_mcleod();
  const double resid = painleve_collocation_residual(h, 0.0);
  const double ratio_right = h.value_at(5.0) / airy_ai(5.0);
  const double ratio_left = h.value_at(-8.0) / 2.0;
  bool decreasing = true;
  for (std::size_t k = 1; k < h.n(); ++k)
    if (!(h.values[k] < h.values[k - 1])) decreasing = false;

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> center(-6.0, 4.0), width(0.3, 1.5), amp(-0.2, 0.2);
  int bumps_ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = center(rng), w0 = width(rng), a0 = amp(rng);
    Profile1D hp = h;
    for (std::size_t k = 0; k < hp.n(); ++k) {
      const double z = (hp.s(k) - c0) / w0;
      if (std::abs(z) < 1.0) hp.values[k] += a0 * std::exp(1.0 - 1.0 / (1.0 - z * z));
    }
    hp.derivative_values.reset();
    const double lo = c0 - w0, hi = c0 + w0;
    Profile1D href = h;
    href.derivative_values.reset();
    const double e_base = painleve_energy(href, 0.0, lo, hi);
    const double e_pert = painleve_energy(hp, 0.0, lo, hi);
    if (e_pert >= e_base - 1e-12) ++bumps_ok;
  }

  r.pass = resid < 1e-8 && ratio_right >= 0.999 && ratio_right <= 1.001 && ratio_left >= 0.99 &&
           ratio_left <= 1.01 && decreasing && bumps_ok == 20;
  r.detail = "residual=" + num(resid, 3) + " h(5)/Ai(5)=" + num(ratio_right, 7) +
             " h(-8)/2=" + num(ratio_left, 6) + (decreasing ? " monotone" : " NOT-monotone") +
             " bumps " + std::to_string(bumps_ok) + "/20";
  return r;
}

inline CheckResult check_boundary_layer(AcceptanceContext& ctx, double eps) {
  CheckResult r;
  r.name = "boundary-layer";
  const SolveResult& run = ctx.minimizer(eps, 0.0);
  const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 0.0);
  double worst = 0.0;
  for (double theta : {M_PI, 0.0}) {
    const Profile1D w = rescale_boundary_layer(run.field, cfg, theta);
    worst = std::max(worst, boundary_layer_compare(w, 0.0));
  }
  r.pass = worst < 0.1;
  r.detail = "max L-inf distance to +-h over theta {pi, 0}: " + num(worst, 4) + " (< 0.1)";
  return r;
}

inline CheckResult check_apriori(AcceptanceContext& ctx) {
  CheckResult r;
  r.name = "apriori-bound";
  double worst = 0.0;
  std::string where;
  for (const auto& [key, run] : ctx.runs()) {
    const ModelConfig cfg = AcceptanceContext::gaussian_config(key.first, key.second);
    const double k = apriori_bound_check(run.field, cfg);
    if (k > worst) {
      worst = k;
      where = "(eps=" + num(key.first, 3) + ",a=" + num(key.second, 3) + ")";
    }
  }
  r.pass = worst <= 3.0;
  r.detail = "fitted K=" + num(worst, 4) + " at " + where + " over " +
             std::to_string(ctx.runs().size()) + " runs (<= 3)";
  return r;
}

inline CheckResult check_symmetries(AcceptanceContext& ctx, double eps) {
  CheckResult r;
  r.name = "symmetries";
  double worst_mirror = 0.0;
  for (const auto& [key, run] : ctx.runs()) {
    if (run.initializer_label == "random") continue;  // asymmetric start
    const GridSpec& g = run.field.grid;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        worst_mirror = std::max(
            worst_mirror, std::abs(run.field.at(i, j) - run.field.at(i, g.ny - 1 - j)));
  }

  const ModelConfig cfg = AcceptanceContext::gaussian_config(eps, 2.1);
  const Field& u = ctx.minimizer(eps, 2.1).field;
  Field t(u.grid);
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) t.at(i, j) = -u.at(u.grid.nx - 1 - i, j);
  const double e_orig = energy_total(u, cfg).total;
  const double e_trans = energy_total(t, cfg).total;
  const double e_rel = std::abs(e_orig - e_trans) / std::max(1.0, std::abs(e_orig));

  r.pass = worst_mirror <= 1e-12 && e_rel <= 1e-12;
  r.detail = "x2-mirror max |v(x1,-x2)-v(x1,x2)| = " + num(worst_mirror, 3) +
             "; energy shift under u -> -u(-x1,x2): " + num(e_rel, 3) + " (both <= 1e-12)";
  return r;
}

inline CheckResult check_threshold_oracle() {
  CheckResult r;
  r.name = "threshold-oracle-agreement";
  r.pass = true;
  std::vector<std::pair<std::string, ModelConfig>> cases;
  cases.emplace_back("parabolic", AcceptanceContext::parabolic_profile());
  cases.emplace_back("cosine", AcceptanceContext::cosine_profile());
  for (auto& [label, cfg] : cases) {
    const double lo = threshold_a_star(cfg);
    const double hi = threshold_a_star_sup(cfg);
    const OracleThresholds ora = oracle_thresholds(cfg);
    const double d1 = std::abs(lo - ora.a_star) / std::abs(ora.a_star);
    const double d2 = std::abs(hi - ora.a_star_sup) / std::abs(ora.a_star_sup);
    const bool ok = d1 <= 1e-4 && d2 <= 1e-4;
    r.pass = r.pass && ok;
    r.detail += label + ": a_*=" + num(lo, 8) + " (oracle " + num(ora.a_star, 8) + "), a^*=" +
                num(hi, 8) + " (oracle " + num(ora.a_star_sup, 8) + ")" + (ok ? "  " : " FAIL  ");
  }
  return r;
}

}  // namespace verify_detail

// Runs the verification matrix. quick = reduced eps = 0.05 smoke variant.
inline std::vector<CheckResult> run_acceptance(bool quick, int jobs, std::ostream& log) {
  using namespace verify_detail;
  AcceptanceContext ctx(jobs);
  std::vector<CheckResult> out;
  auto emit = [&](CheckResult r) {
    log << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n" << std::flush;
    out.push_back(std::move(r));
  };

  emit(check_threshold_exactness(ctx));
  emit(check_sandwich());
  emit(check_hastings_mcleod());
  emit(check_threshold_oracle());

  if (quick) {
    const double eps = 0.05;
    emit(check_energy_identity(ctx, {{eps, 0.0}, {eps, 0.7}, {eps, 2.1}}));
    emit(check_regimes(ctx, eps));
    emit(check_symmetries(ctx, eps));
    return out;
  }

  emit(check_energy_identity(ctx, {{0.1, 0.0},
                                   {0.05, 0.0},
                                   {0.025, 0.0},
                                   {0.1, 1.0},
                                   {0.05, 1.0},
                                   {0.025, 1.0},
                                   {0.025, 0.7},
                                   {0.025, 2.1}}));
  emit(check_renormalized_bound(ctx));
  emit(check_regimes(ctx, 0.025));
  emit(check_tf_convergence(ctx));
  emit(check_outer_regime(ctx));
  emit(check_tanh_cross_section(ctx, 0.025));
  emit(check_boundary_layer(ctx, 0.025));
  emit(check_apriori(ctx));
  emit(check_symmetries(ctx, 0.025));
  return out;
}

}  // namespace nematic
