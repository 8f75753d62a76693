#pragma once
// profile1d.hpp -- uniformly sampled 1D profiles (slices, Painleve and Airy
// solutions) with cubic evaluation.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nematic {

struct Profile1D {
  double s_min = 0.0;
  double s_max = 1.0;
  std::vector<double> values;
  std::optional<std::vector<double>> derivative_values;

  std::size_t n() const { return values.size(); }
  double ds() const { return (s_max - s_min) / static_cast<double>(n() - 1); }
  double s(std::size_t i) const { return s_min + ds() * static_cast<double>(i); }
  bool covers(double x) const {
    const double pad = 1e-9 * (s_max - s_min);
    return x >= s_min - pad && x <= s_max + pad;
  }

  double value_at(double x) const { return interp(values, x); }

  double deriv_at(double x) const {
    if (derivative_values) return interp(*derivative_values, x);
    // Catmull-Rom slope of the value interpolant.
    auto [i, t] = locate(x);
    const double h = ds();
    const double m0 = slope(values, i);
    const double m1 = slope(values, i + 1);
    const double d00 = 6.0 * t * (t - 1.0);
    const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double d01 = -6.0 * t * (t - 1.0);
    const double d11 = t * (3.0 * t - 2.0);
    return (d00 * values[i] + d01 * values[i + 1]) / h + d10 * m0 + d11 * m1;
  }

 private:
  std::pair<std::size_t, double> locate(double x) const {
    if (values.size() < 4) throw std::invalid_argument("Profile1D: need at least 4 nodes");
    if (!covers(x)) throw std::out_of_range("Profile1D: query outside the domain");
    const double f = (x - s_min) / ds();
    std::size_t i = f <= 0.0 ? 0 : static_cast<std::size_t>(f);
    if (i >= n() - 1) i = n() - 2;
    return {i, f - static_cast<double>(i)};
  }

  double slope(const std::vector<double>& y, std::size_t i) const {
    const double h = ds();
    if (i == 0) return (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    if (i == y.size() - 1) return (3.0 * y[i] - 4.0 * y[i - 1] + y[i - 2]) / (2.0 * h);
    return (y[i + 1] - y[i - 1]) / (2.0 * h);
  }

  double interp(const std::vector<double>& y, double x) const {
    auto [i, t] = locate(x);
    const double h = ds();
    const double m0 = slope(y, i);
    const double m1 = slope(y, i + 1);
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y[i] + h10 * h * m0 + h01 * y[i + 1] + h11 * h * m1;
  }
};

}  // namespace nematic
