#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mixreg {

/// Uniform grid with an odd number of points, as used by the Simpson rules.
inline std::vector<double> uniform_grid(double a, double b, std::size_t npoints) {
  if (npoints < 3 || npoints % 2 == 0)
    throw std::invalid_argument("uniform_grid: need an odd number of points >= 3");
  std::vector<double> g(npoints);
  double h = (b - a) / double(npoints - 1);
  for (std::size_t k = 0; k < npoints; ++k) g[k] = a + h * double(k);
  g.back() = b;
  return g;
}

/// Composite Simpson over tabulated values on a uniform grid.
inline double simpson(const std::vector<double>& values, double a, double b) {
  std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: need an odd number of points");
  double h = (b - a) / double(n - 1);
  double s = values.front() + values.back();
  for (std::size_t k = 1; k + 1 < n; ++k) s += values[k] * (k % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t npoints) {
  auto grid = uniform_grid(a, b, npoints);
  std::vector<double> vals(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) vals[k] = f(grid[k]);
  return simpson(vals, a, b);
}

/// Adaptive refinement: doubles the panel count until two successive Simpson
/// values agree within tol.
inline double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol, std::size_t max_points = (1u << 16) + 1) {
  std::size_t n = 65;
  double prev = simpson(f, a, b, n);
  while (n < max_points) {
    n = 2 * (n - 1) + 1;
    double cur = simpson(f, a, b, n);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  throw std::runtime_error("simpson_adaptive: quadrature did not converge");
}

}  // namespace mixreg
