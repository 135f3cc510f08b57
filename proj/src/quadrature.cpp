#include "rydqed/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "rydqed/kahan.hpp"

namespace rydqed {

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> rules;
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  auto it = rules.find(n);
  if (it != rules.end()) return it->second;

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double k = i + 1.0;
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(i, i + 1) = b;
    jacobi(i + 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussLegendre rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.w[i] = 2.0 * v0 * v0;
  }
  return rules.emplace(n, std::move(rule)).first->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                int order) {
  const auto& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanReal sum;
  for (int i = 0; i < order; ++i)
    sum += rule.w[i] * f(mid + half * rule.x[i]);
  return sum.value() * half;
}

QuadResult integrate_log_grid(const std::function<double(double)>& f,
                              double lo, double hi, double rel_tol,
                              double abs_floor) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::domain_error("integrate_log_grid: need 0 < lo < hi");
  const double u_lo = std::log(lo), u_hi = std::log(hi);
  auto g = [&f](double u) {
    const double k = std::exp(u);
    return f(k) * k; // dk = k du
  };

  auto level_value = [&](int panels) {
    KahanReal sum;
    const double du = (u_hi - u_lo) / panels;
    for (int i = 0; i < panels; ++i)
      sum += gl_panel(g, u_lo + i * du, u_lo + (i + 1) * du, 24);
    return sum.value();
  };

  QuadResult res;
  int panels = std::max(8, static_cast<int>((u_hi - u_lo) / 2.3));
  double prev = level_value(panels);
  for (int level = 1; level <= 8; ++level) {
    panels *= 2;
    const double cur = level_value(panels);
    res.value = cur;
    res.abs_error = std::abs(cur - prev);
    res.levels_used = level;
    if (res.abs_error <= std::max(rel_tol * std::abs(cur), abs_floor)) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  return res;
}

} // namespace rydqed
