#pragma once
// energy.hpp -- trapezoidal quadrature of the free energy, its renormalized
// variant, per-line sliced energies, and the 1D Painleve II and Allen-Cahn
// energies. Gradients use centered differences, one-sided at the boundary.

#include <cmath>
#include <cstddef>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/model.hpp"
#include "nematic/numerics.hpp"
#include "nematic/profile1d.hpp"

namespace nematic {

struct EnergyBreakdown {
  double total = 0.0;
  double gradient_term = 0.0;   // (eps/2) |grad u|^2
  double potential_term = 0.0;  // -(1/2eps) mu u^2
  double quartic_term = 0.0;    // (1/4eps) u^4
  double forcing_term = 0.0;    // -a f1 u
  double renormalized = 0.0;    // total + disc constant
  double anisotropy_x2 = 0.0;   // eps |du/dx2|^2
};

// Disc indicator |x| < rho with half weight on nodes within h/2 of the rim.
inline double disc_mask_weight(double r, double rho, double h) {
  if (r <= rho - 0.5 * h) return 1.0;
  if (r < rho + 0.5 * h) return 0.5;
  return 0.0;
}

// Grid quadrature of mu^2/(4 eps) over the bistable disc; the additive
// constant turning E into the renormalized energy.
inline double disc_renorm_constant(const ModelConfig& c) {
  const GridSpec& g = c.grid;
  const double rho = geometry(c).rho;
  const double h = std::max(g.hx(), g.hy());
  std::vector<double> rows(g.ny);
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    const double y = g.x2(j);
    KahanSum row;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      const double r = std::hypot(g.x1(i), y);
      const double wm = disc_mask_weight(r, rho, h);
      if (wm == 0.0) continue;
      const double m = mu_rad(c, r);
      row.add(wx * wm * m * m);
    }
    rows[j] = wy * row.value();
  }
  return pairwise_sum(rows) * g.hx() * g.hy() / (4.0 * c.epsilon);
}

namespace detail {

struct TermRows {
  std::vector<double> grad, pot, quart, force, aniso;
  explicit TermRows(int ny) : grad(ny), pot(ny), quart(ny), force(ny), aniso(ny) {}
};

inline TermRows accumulate_rows(const Field& u, const ModelConfig& c,
                                const std::vector<double>& mu, const std::vector<double>& f1) {
  const GridSpec& g = u.grid;
  const int nx = g.nx, ny = g.ny;
  const double hx = g.hx(), hy = g.hy();
  const double eps = c.epsilon;
  TermRows rows(ny);
  for (int j = 0; j < ny; ++j) {
    const double wy = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
    KahanSum sg, sp, sq, sf, sa;
    const std::size_t base = static_cast<std::size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) {
      const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
      const std::size_t k = base + i;
      const double v = u.values[k];
      double dudx, dudy;
      if (i == 0)
        dudx = (u.values[k + 1] - v) / hx;
      else if (i == nx - 1)
        dudx = (v - u.values[k - 1]) / hx;
      else
        dudx = (u.values[k + 1] - u.values[k - 1]) / (2.0 * hx);
      if (j == 0)
        dudy = (u.values[k + nx] - v) / hy;
      else if (j == ny - 1)
        dudy = (v - u.values[k - nx]) / hy;
      else
        dudy = (u.values[k + nx] - u.values[k - nx]) / (2.0 * hy);
      const double v2 = v * v;
      sg.add(wx * 0.5 * eps * (dudx * dudx + dudy * dudy));
      sp.add(wx * (-0.5 / eps) * mu[k] * v2);
      sq.add(wx * (0.25 / eps) * v2 * v2);
      sf.add(wx * (-c.a) * f1[k] * v);
      sa.add(wx * eps * dudy * dudy);
    }
    rows.grad[j] = wy * sg.value();
    rows.pot[j] = wy * sp.value();
    rows.quart[j] = wy * sq.value();
    rows.force[j] = wy * sf.value();
    rows.aniso[j] = wy * sa.value();
  }
  return rows;
}

}  // namespace detail

inline EnergyBreakdown energy_total(const Field& u, const ModelConfig& c,
                                    const std::vector<double>& mu_grid,
                                    const std::vector<double>& f1_grid) {
  ensure_matching_grid(u, c.grid);
  const double cell = c.grid.hx() * c.grid.hy();
  const auto rows = detail::accumulate_rows(u, c, mu_grid, f1_grid);
  EnergyBreakdown b;
  b.gradient_term = pairwise_sum(rows.grad) * cell;
  b.potential_term = pairwise_sum(rows.pot) * cell;
  b.quartic_term = pairwise_sum(rows.quart) * cell;
  b.forcing_term = pairwise_sum(rows.force) * cell;
  b.anisotropy_x2 = pairwise_sum(rows.aniso) * cell;
  b.total = b.gradient_term + b.potential_term + b.quartic_term + b.forcing_term;
  b.renormalized = b.total + disc_renorm_constant(c);
  return b;
}

inline EnergyBreakdown energy_total(const Field& u, const ModelConfig& c) {
  return energy_total(u, c, build_mu_grid(c), build_f1_grid(c));
}

// Total only, for per-step monotonicity checks inside the solver.
inline double energy_total_value(const Field& u, const ModelConfig& c,
                                 const std::vector<double>& mu_grid,
                                 const std::vector<double>& f1_grid) {
  const double cell = c.grid.hx() * c.grid.hy();
  const auto rows = detail::accumulate_rows(u, c, mu_grid, f1_grid);
  return (pairwise_sum(rows.grad) + pairwise_sum(rows.pot) + pairwise_sum(rows.quart) +
          pairwise_sum(rows.force)) *
         cell;
}

// Edge-difference (summation-by-parts) discrete energy. The 5-point scheme is
// exactly its Euler-Lagrange system, which makes this the Lyapunov functional
// of the gradient flow; the centered-difference quadrature above is reported
// to users but is not what the iteration descends.
inline double energy_sbp_value(const Field& u, const ModelConfig& c,
                               const std::vector<double>& mu_grid,
                               const std::vector<double>& f1_grid) {
  const GridSpec& g = u.grid;
  const int nx = g.nx, ny = g.ny;
  const double hx = g.hx(), hy = g.hy();
  const double eps = c.epsilon;
  std::vector<double> rows(ny, 0.0);
  for (int j = 0; j < ny; ++j) {
    KahanSum s;
    const std::size_t base = static_cast<std::size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = base + i;
      const double v = u.values[k];
      if (i + 1 < nx) {
        const double dx = (u.values[k + 1] - v) / hx;
        s.add(0.5 * eps * dx * dx);
      }
      if (j + 1 < ny) {
        const double dy = (u.values[k + nx] - v) / hy;
        s.add(0.5 * eps * dy * dy);
      }
      const double v2 = v * v;
      s.add(-0.5 / eps * mu_grid[k] * v2 + 0.25 / eps * v2 * v2 - c.a * f1_grid[k] * v);
    }
    rows[j] = s.value();
  }
  return pairwise_sum(rows) * hx * hy;
}

inline double energy_renormalized(const Field& u, const ModelConfig& c) {
  return energy_total(u, c).renormalized;
}

// Restriction of the energy to the grid row x2 = x2(j); the x1 derivative only.
inline double energy_slice(const Field& u, int j, const ModelConfig& c) {
  ensure_matching_grid(u, c.grid);
  const GridSpec& g = c.grid;
  if (j < 0 || j >= g.ny) throw std::out_of_range("energy_slice: row index out of range");
  const double hx = g.hx();
  const double eps = c.epsilon;
  const double y = g.x2(j);
  KahanSum s;
  const std::size_t base = static_cast<std::size_t>(j) * g.nx;
  for (int i = 0; i < g.nx; ++i) {
    const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
    const std::size_t k = base + i;
    const double v = u.values[k];
    double dudx;
    if (i == 0)
      dudx = (u.values[k + 1] - v) / hx;
    else if (i == g.nx - 1)
      dudx = (v - u.values[k - 1]) / hx;
    else
      dudx = (u.values[k + 1] - u.values[k - 1]) / (2.0 * hx);
    const double x = g.x1(i);
    const double m = mu_eval(c, x, y);
    const double f1 = f1_eval(c, x, y);
    const double v2 = v * v;
    s.add(wx * (0.5 * eps * dudx * dudx - 0.5 / eps * m * v2 + 0.25 / eps * v2 * v2 -
                c.a * f1 * v));
  }
  return s.value() * hx;
}

// Companion renormalized variant: adds the chord piece of mu^2/(4 eps).
inline double energy_slice_renormalized(const Field& u, int j, const ModelConfig& c) {
  const GridSpec& g = c.grid;
  const double plain = energy_slice(u, j, c);
  const double rho = geometry(c).rho;
  const double h = std::max(g.hx(), g.hy());
  const double y = g.x2(j);
  KahanSum s;
  for (int i = 0; i < g.nx; ++i) {
    const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
    const double r = std::hypot(g.x1(i), y);
    const double wm = disc_mask_weight(r, rho, h);
    if (wm == 0.0) continue;
    const double m = mu_rad(c, r);
    s.add(wx * wm * m * m);
  }
  return plain + s.value() * g.hx() / (4.0 * c.epsilon);
}

// |E(u) + int u^4/(4 eps)| / max(1, |E(u)|). Small only for stationary states
// of the unforced problem; see weak_form_identity_residual for general a.
inline double energy_identity_residual(const Field& u, const ModelConfig& c) {
  const EnergyBreakdown b = energy_total(u, c);
  return std::abs(b.total + b.quartic_term) / std::max(1.0, std::abs(b.total));
}

// Identity obtained by testing the Euler-Lagrange equation with u itself:
// E(u) = -int u^4/(4 eps) - (a/2) int f1 u. Holds for any stationary state.
inline double weak_form_identity_residual(const Field& u, const ModelConfig& c) {
  const EnergyBreakdown b = energy_total(u, c);
  return std::abs(b.total + b.quartic_term - 0.5 * b.forcing_term) /
         std::max(1.0, std::abs(b.total));
}

namespace detail {

template <class F>
double window_simpson(const Profile1D& y, double lo, double hi, const F& integrand, int n = 4096) {
  if (!(hi > lo)) throw std::invalid_argument("profile energy: empty window");
  if (!y.covers(lo) || !y.covers(hi))
    throw std::out_of_range("profile energy: window outside the profile domain");
  const double h = (hi - lo) / n;
  KahanSum s;
  for (int k = 0; k <= n; ++k) {
    const double x = lo + h * k;
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    s.add(w * integrand(x));
  }
  return s.value() * h / 3.0;
}

}  // namespace detail

// E_PII over the window: 1/2 |y'|^2 + 1/2 s y^2 + 1/2 y^4 + alpha y.
inline double painleve_energy(const Profile1D& y, double alpha, double lo, double hi) {
  return detail::window_simpson(y, lo, hi, [&](double s) {
    const double v = y.value_at(s);
    const double d = y.deriv_at(s);
    return 0.5 * d * d + 0.5 * s * v * v + 0.5 * v * v * v * v + alpha * v;
  });
}

// Allen-Cahn line energy: 1/2 |u'|^2 + 1/4 (1 - u^2)^2.
inline double allen_cahn_energy(const Profile1D& u, double lo, double hi) {
  return detail::window_simpson(u, lo, hi, [&](double s) {
    const double v = u.value_at(s);
    const double d = u.deriv_at(s);
    const double q = 1.0 - v * v;
    return 0.5 * d * d + 0.25 * q * q;
  });
}

}  // namespace nematic
