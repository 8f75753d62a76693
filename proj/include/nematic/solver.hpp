#pragma once
// solver.hpp -- stationary states of eps^2 Lap u + mu u - u^3 + eps a f1 = 0
// by semi-implicit gradient flow (implicit diffusion, explicit reaction),
// plus the closed-form initializers and a multistart driver.

#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nematic/energy.hpp"
#include "nematic/field.hpp"
#include "nematic/model.hpp"

namespace nematic {

struct CandidateInfo {
  std::string label;
  double energy = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int steps = 0;
};

struct SolveResult {
  Field field;
  EnergyBreakdown energy;
  double residual = std::numeric_limits<double>::infinity();
  int steps_taken = 0;
  std::string initializer_label;
  bool converged = false;
  double max_energy_increase = 0.0;          // largest accepted step increase
  std::vector<CandidateInfo> candidates;     // filled by minimize_multistart
};

struct MultistartError : std::runtime_error {
  SolveResult best_partial;
  MultistartError(const std::string& msg, SolveResult best)
      : std::runtime_error(msg), best_partial(std::move(best)) {}
};

// ---- initializers -----------------------------------------------------------

namespace detail {

// Thomas-Fermi comparison profile: sqrt(mu) inside, a linear wedge of width
// eps^(2/3) at the rim, zero outside.
inline double tf_profile(const ModelConfig& c, const ModelGeometry& geom, double r) {
  const double eps23 = std::pow(c.epsilon, 2.0 / 3.0);
  if (r >= geom.rho) return 0.0;
  if (r <= geom.rho - eps23) return std::sqrt(std::max(mu_rad(c, r), 0.0));
  const double slope = std::sqrt(std::max(mu_rad(c, geom.rho - eps23), 0.0)) / eps23;
  return slope * (geom.rho - r);
}

}  // namespace detail

inline Field thomas_fermi_ansatz(const ModelConfig& c, int sign = +1) {
  c.validate();
  const GridSpec& g = c.grid;
  const ModelGeometry geom = geometry(c);
  Field u(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      u.at(i, j) = sign * detail::tf_profile(c, geom, std::hypot(g.x1(i), g.x2(j)));
  return u;
}

// Antisymmetric tanh ridge across x1 = 0 with amplitude matched to the TF
// profile at |x1| = eps^(1-beta), beta = 0.4.
inline Field wall_ansatz(const ModelConfig& c) {
  c.validate();
  const GridSpec& g = c.grid;
  const ModelGeometry geom = geometry(c);
  const double eps = c.epsilon;
  const double zeta = std::pow(eps, -0.4);
  const double ridge = eps * zeta;  // eps^0.6
  const double x2max = std::sqrt(std::max(geom.rho * geom.rho - ridge * ridge, 0.0));
  Field u(g);
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.x2(j);
    const double psi0 = detail::tf_profile(c, geom, std::abs(y));
    double amp = 0.0;
    if (std::abs(y) < x2max && psi0 > 0.0) {
      const double arg = zeta * psi0 / std::sqrt(2.0);
      const double psi_r = detail::tf_profile(c, geom, std::hypot(ridge, y));
      amp = arg > 1e-8 ? psi_r / std::tanh(arg) : psi_r / arg;
    }
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x1(i);
      if (std::abs(x) >= ridge) {
        const double psi = detail::tf_profile(c, geom, std::hypot(x, y));
        u.at(i, j) = x >= 0.0 ? psi : -psi;
      } else {
        u.at(i, j) = amp * std::tanh(x * psi0 / (std::sqrt(2.0) * eps));
      }
    }
  }
  return u;
}

inline Field zero_field(const ModelConfig& c) { return Field(c.grid); }

inline Field random_field(const ModelConfig& c, unsigned seed, double amplitude = 0.1) {
  Field u(c.grid);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  for (int j = 1; j < c.grid.ny - 1; ++j)
    for (int i = 1; i < c.grid.nx - 1; ++i) u.at(i, j) = dist(rng);
  return u;
}

// ---- discrete operators -----------------------------------------------------

namespace detail {

// L-inf norm of eps^2 Lap u + mu u - u^3 + eps a f1 over interior nodes.
// Also reports max |u| for the divergence guard.
inline std::pair<double, double> residual_and_umax(const Field& u, const ModelConfig& c,
                                                   const std::vector<double>& mu,
                                                   const std::vector<double>& f1) {
  const GridSpec& g = u.grid;
  const int nx = g.nx;
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  const double e2 = c.epsilon * c.epsilon;
  const double ea = c.epsilon * c.a;
  double res = 0.0;
  double umax = 0.0;
  const double* v = u.values.data();
  for (int j = 1; j < g.ny - 1; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * nx;
    for (int i = 1; i < nx - 1; ++i) {
      const std::size_t k = base + i;
      const double lap =
          (v[k - 1] + v[k + 1] - 2.0 * v[k]) * ihx2 + (v[k - nx] + v[k + nx] - 2.0 * v[k]) * ihy2;
      const double r = e2 * lap + mu[k] * v[k] - v[k] * v[k] * v[k] + ea * f1[k];
      res = std::max(res, std::abs(r));
      umax = std::max(umax, std::abs(v[k]));
    }
  }
  return {res, umax};
}

// out = x - cdiff * Lap x on interior nodes; boundary ring stays zero.
inline void apply_helmholtz(const GridSpec& g, double cdiff, const std::vector<double>& x,
                            std::vector<double>& out) {
  const int nx = g.nx;
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  const double* v = x.data();
  double* o = out.data();
  for (int j = 1; j < g.ny - 1; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * nx;
    for (int i = 1; i < nx - 1; ++i) {
      const std::size_t k = base + i;
      const double lap =
          (v[k - 1] + v[k + 1] - 2.0 * v[k]) * ihx2 + (v[k - nx] + v[k + nx] - 2.0 * v[k]) * ihy2;
      o[k] = v[k] - cdiff * lap;
    }
  }
}

inline double grid_dot(const GridSpec& g, const std::vector<double>& a,
                       const std::vector<double>& b, std::vector<double>& row_scratch) {
  const int nx = g.nx;
  for (int j = 1; j < g.ny - 1; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * nx;
    double s = 0.0;
    for (int i = 1; i < nx - 1; ++i) s += a[base + i] * b[base + i];
    row_scratch[j] = s;
  }
  row_scratch[0] = row_scratch[g.ny - 1] = 0.0;
  return pairwise_sum(row_scratch);
}

// Conjugate gradients for (I - cdiff Lap) x = b with Dirichlet ring. The
// operator is a small perturbation of the identity, so a warm start from the
// previous iterate converges in a handful of iterations.
struct CgWorkspace {
  std::vector<double> r, p, ap, rows;
  explicit CgWorkspace(const GridSpec& g)
      : r(g.nodes(), 0.0), p(g.nodes(), 0.0), ap(g.nodes(), 0.0), rows(g.ny, 0.0) {}
};

inline int cg_solve(const GridSpec& g, double cdiff, const std::vector<double>& b,
                    std::vector<double>& x, CgWorkspace& ws, double rel_tol, int max_iter) {
  const int nx = g.nx;
  apply_helmholtz(g, cdiff, x, ws.ap);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < nx - 1; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * nx + i;
      ws.r[k] = b[k] - ws.ap[k];
      ws.p[k] = ws.r[k];
    }
  double rr = grid_dot(g, ws.r, ws.r, ws.rows);
  const double bb = grid_dot(g, b, b, ws.rows);
  const double stop2 = rel_tol * rel_tol * std::max(bb, 1e-300);
  int it = 0;
  while (rr > stop2 && it < max_iter) {
    apply_helmholtz(g, cdiff, ws.p, ws.ap);
    const double pap = grid_dot(g, ws.p, ws.ap, ws.rows);
    const double alpha = rr / pap;
    for (int j = 1; j < g.ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        x[k] += alpha * ws.p[k];
        ws.r[k] -= alpha * ws.ap[k];
      }
    const double rr_new = grid_dot(g, ws.r, ws.r, ws.rows);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int j = 1; j < g.ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        ws.p[k] = ws.r[k] + beta * ws.p[k];
      }
    ++it;
  }
  return it;
}

}  // namespace detail

inline double pde_residual(const Field& u, const ModelConfig& c) {
  ensure_matching_grid(u, c.grid);
  return detail::residual_and_umax(u, c, build_mu_grid(c), build_f1_grid(c)).first;
}

// ---- gradient flow ----------------------------------------------------------

inline SolveResult gradient_flow_run(const Field& init, const ModelConfig& c,
                                     std::string label = "custom") {
  c.validate();
  ensure_matching_grid(init, c.grid);
  const GridSpec& g = c.grid;
  const int nx = g.nx, ny = g.ny;
  const std::vector<double> mu = build_mu_grid(c);
  const std::vector<double> f1 = build_f1_grid(c);

  Field u = init;
  for (int i = 0; i < nx; ++i) u.at(i, 0) = u.at(i, ny - 1) = 0.0;
  for (int j = 0; j < ny; ++j) u.at(0, j) = u.at(nx - 1, j) = 0.0;

  const double eps = c.epsilon;
  const double e2 = eps * eps;
  const double h = std::min(g.hx(), g.hy());
  double dt = c.tol.dt > 0.0 ? c.tol.dt : std::min(0.5 * h * h / e2, 1.0);

  double fmax = 0.0;
  for (double v : f1) fmax = std::max(fmax, std::abs(v));
  const double apriori =
      std::sqrt(std::max(mu_rad(c, 0.0), 0.0)) + std::cbrt(eps * c.a * fmax) + 1.0;

  Field unew = u;
  std::vector<double> rhs(g.nodes(), 0.0);
  detail::CgWorkspace ws(g);

  const double dt0 = dt;
  double energy = energy_sbp_value(u, c, mu, f1);
  auto [res, umax] = detail::residual_and_umax(u, c, mu, f1);

  SolveResult out;
  out.initializer_label = std::move(label);
  int steps = 0;
  int stall = 0;
  int since_reject = 0;
  while (res > c.tol.residual_tol && steps < c.tol.max_steps) {
    for (int j = 1; j < ny - 1; ++j) {
      const std::size_t base = static_cast<std::size_t>(j) * nx;
      for (int i = 1; i < nx - 1; ++i) {
        const std::size_t k = base + i;
        const double v = u.values[k];
        rhs[k] = v + dt * (mu[k] * v - v * v * v + eps * c.a * f1[k]);
      }
    }
    unew.values = u.values;  // warm start
    detail::cg_solve(g, dt * e2, rhs, unew.values, ws, 1e-12, 400);
    const double energy_new = energy_sbp_value(unew, c, mu, f1);
    if (energy_new > energy + 1e-12 * std::max(1.0, std::abs(energy))) {
      dt *= 0.5;
      since_reject = 0;
      if (dt < 1e-10) break;
      continue;
    }
    out.max_energy_increase = std::max(out.max_energy_increase, energy_new - energy);
    const double decrease = energy - energy_new;
    u.values.swap(unew.values);
    energy = energy_new;
    ++steps;
    if (++since_reject >= 50 && dt < dt0) {
      dt = std::min(2.0 * dt, dt0);
      since_reject = 0;
    }
    std::tie(res, umax) = detail::residual_and_umax(u, c, mu, f1);
    if (umax > 10.0 * apriori)
      throw std::runtime_error("gradient_flow_run: iterate exceeded 10x the a-priori bound (max|u|=" +
                               std::to_string(umax) + ", bound=" + std::to_string(apriori) + ")");
    if (std::abs(decrease) <= c.tol.energy_stall_tol * std::max(1.0, std::abs(energy)))
      ++stall;
    else
      stall = 0;
    if (stall >= 200) break;
  }

  // Far-field values below the solve's resolution are zeroed so that sign
  // noise cannot seed spurious level-set crossings.
  const double snap = 1e-13 * u.max_abs();
  if (snap > 0.0)
    for (double& v : u.values)
      if (std::abs(v) < snap) v = 0.0;

  out.field = std::move(u);
  out.energy = energy_total(out.field, c, mu, f1);
  out.residual = res;
  out.steps_taken = steps;
  out.converged = res <= c.tol.residual_tol;
  return out;
}

// ---- multistart -------------------------------------------------------------

inline SolveResult minimize_multistart(const ModelConfig& c, unsigned seed = 42, int jobs = 0) {
  c.validate();
  std::vector<std::pair<std::string, Field>> inits;
  inits.emplace_back("tf_plus", thomas_fermi_ansatz(c, +1));
  inits.emplace_back("tf_minus", thomas_fermi_ansatz(c, -1));
  inits.emplace_back("wall", wall_ansatz(c));
  inits.emplace_back("zero", zero_field(c));
  inits.emplace_back("random", random_field(c, seed));

  if (jobs <= 0) jobs = std::max(1u, std::min(std::thread::hardware_concurrency(), 4u));

  std::vector<SolveResult> results(inits.size());
  std::vector<std::string> errors(inits.size());
  for (std::size_t begin = 0; begin < inits.size(); begin += jobs) {
    const std::size_t end = std::min(begin + jobs, inits.size());
    std::vector<std::future<void>> batch;
    for (std::size_t k = begin; k < end; ++k) {
      batch.push_back(std::async(std::launch::async, [&, k] {
        try {
          results[k] = gradient_flow_run(inits[k].second, c, inits[k].first);
        } catch (const std::exception& e) {
          results[k].initializer_label = inits[k].first;
          errors[k] = e.what();
        }
      }));
    }
    for (auto& f : batch) f.get();
  }

  std::vector<CandidateInfo> cands;
  int best = -1;
  int best_partial = -1;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const SolveResult& r = results[k];
    CandidateInfo ci;
    ci.label = r.initializer_label + (errors[k].empty() ? "" : " [" + errors[k] + "]");
    ci.energy = errors[k].empty() ? r.energy.total : std::numeric_limits<double>::quiet_NaN();
    ci.residual = r.residual;
    ci.converged = r.converged;
    ci.steps = r.steps_taken;
    cands.push_back(std::move(ci));
    if (r.converged && (best < 0 || r.energy.total < results[best].energy.total))
      best = static_cast<int>(k);
    if (errors[k].empty() &&
        (best_partial < 0 || r.residual < results[best_partial].residual))
      best_partial = static_cast<int>(k);
  }
  if (best < 0) {
    SolveResult partial = best_partial >= 0 ? std::move(results[best_partial]) : SolveResult{};
    partial.candidates = std::move(cands);
    throw MultistartError("minimize_multistart: no initializer converged", std::move(partial));
  }
  SolveResult winner = std::move(results[best]);
  winner.candidates = std::move(cands);
  return winner;
}

}  // namespace nematic
