#pragma once
// field.hpp -- uniform 2D grid, scalar fields on it, and bicubic sampling.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nematic {

// Square domain [-L, L]^2. Coordinates are generated as (index - center) * h so
// that x(i) and x(n-1-i) are exact negations in floating point; mirror and odd
// symmetries of fields then survive arithmetic bitwise.
struct GridSpec {
  double half_extent = 3.0;
  int nx = 193;
  int ny = 193;

  double hx() const { return 2.0 * half_extent / (nx - 1); }
  double hy() const { return 2.0 * half_extent / (ny - 1); }
  double x1(int i) const { return (static_cast<double>(i) - 0.5 * (nx - 1)) * hx(); }
  double x2(int j) const { return (static_cast<double>(j) - 0.5 * (ny - 1)) * hy(); }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

  void validate() const {
    if (!(half_extent > 0.0)) throw std::invalid_argument("GridSpec: half_extent must be positive");
    if (nx < 16 || ny < 16) throw std::invalid_argument("GridSpec: nx, ny must be at least 16");
  }

  bool operator==(const GridSpec&) const = default;
};

// Scalar field u(x1_i, x2_j), row-major with the x1 index fastest.
struct Field {
  GridSpec grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), values(g.nodes(), 0.0) {}

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * grid.nx + i; }
  double& at(int i, int j) { return values[idx(i, j)]; }
  double at(int i, int j) const { return values[idx(i, j)]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

inline void ensure_matching_grid(const Field& u, const GridSpec& g) {
  if (!(u.grid == g) || u.values.size() != g.nodes())
    throw std::invalid_argument("field does not match the configured grid");
}

namespace detail {

// Catmull-Rom weights for parameter t in [0, 1].
inline std::array<double, 4> catmull_rom_w(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {-0.5 * t3 + t2 - 0.5 * t, 1.5 * t3 - 2.5 * t2 + 1.0, -1.5 * t3 + 2.0 * t2 + 0.5 * t,
          0.5 * t3 - 0.5 * t2};
}

}  // namespace detail

// Bicubic interpolation of a grid field. Near the boundary the 4-point stencil
// is shifted inward, which degrades gracefully to one-sided cubics.
inline double sample_bicubic(const Field& u, double x, double y) {
  const GridSpec& g = u.grid;
  const double fx = x / g.hx() + 0.5 * (g.nx - 1);
  const double fy = y / g.hy() + 0.5 * (g.ny - 1);
  if (fx < -1e-9 || fx > g.nx - 1 + 1e-9 || fy < -1e-9 || fy > g.ny - 1 + 1e-9)
    throw std::out_of_range("sample_bicubic: point outside the grid");
  int i1 = static_cast<int>(std::floor(fx));
  int j1 = static_cast<int>(std::floor(fy));
  i1 = std::min(std::max(i1, 1), g.nx - 3);
  j1 = std::min(std::max(j1, 1), g.ny - 3);
  const double tx = fx - i1;
  const double ty = fy - j1;
  const auto wx = detail::catmull_rom_w(tx);
  const auto wy = detail::catmull_rom_w(ty);
  double acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    double row = 0.0;
    for (int a = 0; a < 4; ++a) row += wx[a] * u.at(i1 - 1 + a, j1 - 1 + b);
    acc += wy[b] * row;
  }
  return acc;
}

}  // namespace nematic
