#pragma once
// numerics.hpp -- summation, 1D quadrature, interpolation tables and small
// search helpers shared by the rest of the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nematic {

// Cascade summation. Deterministic for a fixed input length, error O(log n).
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(std::span<const double>(x.data(), x.size()));
}

// Compensated accumulator for long in-order reductions.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with an absolute tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Relative-tolerance wrapper; the scale is taken from a coarse estimate.
template <class F>
double adaptive_simpson_rel(const F& f, double a, double b, double rel_tol, int max_depth = 48) {
  if (a == b) return 0.0;
  double scale = 0.0;
  for (int k = 0; k <= 8; ++k) scale = std::max(scale, std::abs(f(a + (b - a) * k / 8.0)));
  scale = std::max(scale * std::abs(b - a), 1e-300);
  return adaptive_simpson(f, a, b, rel_tol * scale, max_depth);
}

// Golden-section minimization of a unimodal function on [a, b].
template <class F>
std::pair<double, double> golden_section_min(const F& f, double a, double b, double xtol,
                                             int max_iter = 200) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Uniformly sampled radial table with cubic Hermite (Catmull-Rom) evaluation.
// Node slopes use centered differences, one-sided second order at the ends.
class RadialTable {
 public:
  RadialTable() = default;
  RadialTable(double r_max, std::vector<double> samples) : r_max_(r_max), y_(std::move(samples)) {
    if (y_.size() < 4) throw std::invalid_argument("RadialTable: need at least 4 samples");
    if (!(r_max_ > 0.0)) throw std::invalid_argument("RadialTable: r_max must be positive");
    const std::size_t n = y_.size();
    dr_ = r_max_ / static_cast<double>(n - 1);
    m_.resize(n);
    m_[0] = (-3.0 * y_[0] + 4.0 * y_[1] - y_[2]) / (2.0 * dr_);
    for (std::size_t i = 1; i + 1 < n; ++i) m_[i] = (y_[i + 1] - y_[i - 1]) / (2.0 * dr_);
    m_[n - 1] = (3.0 * y_[n - 1] - 4.0 * y_[n - 2] + y_[n - 3]) / (2.0 * dr_);
  }

  double r_max() const { return r_max_; }
  double spacing() const { return dr_; }
  bool covers(double r) const { return r >= 0.0 && r <= r_max_ * (1.0 + 1e-12); }

  double value(double r) const {
    auto [i, t] = locate(r);
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h10 * dr_ * m_[i] + h01 * y_[i + 1] + h11 * dr_ * m_[i + 1];
  }

  double deriv(double r) const {
    auto [i, t] = locate(r);
    const double d00 = 6.0 * t * (t - 1.0);
    const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double d01 = -6.0 * t * (t - 1.0);
    const double d11 = t * (3.0 * t - 2.0);
    return (d00 * y_[i] + d01 * y_[i + 1]) / dr_ + d10 * m_[i] + d11 * m_[i + 1];
  }

 private:
  std::pair<std::size_t, double> locate(double r) const {
    if (!covers(r)) throw std::out_of_range("RadialTable: query outside [0, r_max]");
    r = std::clamp(r, 0.0, r_max_);
    std::size_t i = static_cast<std::size_t>(r / dr_);
    if (i >= y_.size() - 1) i = y_.size() - 2;
    return {i, r / dr_ - static_cast<double>(i)};
  }

  double r_max_ = 0.0;
  double dr_ = 0.0;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace nematic
