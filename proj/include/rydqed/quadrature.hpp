#pragma once

#include <functional>
#include <vector>

namespace rydqed {

struct GaussLegendre {
  std::vector<double> x; // nodes on [-1, 1]
  std::vector<double> w;
};

/// Gauss-Legendre rule of order n (cached).
const GaussLegendre& gauss_legendre(int n);

/// Integral of f over [a, b] with a single mapped rule.
double gl_panel(const std::function<double(double)>& f, double a, double b,
                int order = 32);

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int levels_used = 0;
  bool converged = false;
};

/// Integral over [lo, hi] on a logarithmic grid: fixed panels per decade,
/// refined by doubling until the Richardson error estimate drops below
/// max(rel_tol * |value|, abs_floor). Requires 0 < lo < hi.
QuadResult integrate_log_grid(const std::function<double(double)>& f,
                              double lo, double hi, double rel_tol = 1e-10,
                              double abs_floor = 0.0);

} // namespace rydqed
