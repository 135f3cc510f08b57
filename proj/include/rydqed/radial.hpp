#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rydqed {

/// Cache key for hydrogen radial integrals. `kind` 0 is a plain moment
///   integral(n l | r^power | n' l') = int R_nl r^power R_n'l' r^2 dr,
/// `kind` 1 replaces R_n'l' by its radial derivative dR_n'l'/dr.
struct RadialIntegralKey {
  std::int32_t n = 1, l = 0, n_prime = 1, l_prime = 0;
  std::int32_t kind = 0;
  std::int32_t power = 1;

  bool valid() const;
  friend bool operator==(const RadialIntegralKey& a,
                         const RadialIntegralKey& b) {
    return a.n == b.n && a.l == b.l && a.n_prime == b.n_prime &&
           a.l_prime == b.l_prime && a.kind == b.kind && a.power == b.power;
  }
};

/// Moment integral, evaluated in log-space on a Gauss-Laguerre rule that is
/// exact for the polynomial-times-exponential integrand. Supported powers:
/// -2, -1, 0, 1. Results are memoized and optionally persisted (see cache).
double radial_integral(const RadialIntegralKey& key);

double radial_moment(int n, int l, int n_prime, int l_prime, int power);

/// int R_nl(r) dR_n'l'/dr r^power r^2 dr, powers -1 and 0.
double radial_deriv_moment(int n, int l, int n_prime, int l_prime, int power);

/// Independent analytic route: termwise Gamma-function integration of the
/// Laguerre expansion, log-space with sign tracking. Used by the
/// cross-check mode; subject to cancellation at large n-n' separations.
double radial_moment_analytic(int n, int l, int n_prime, int l_prime,
                              int power);

struct RadialCrossCheck {
  int pairs_checked = 0;
  double worst_rel = 0.0;
  bool pass = false;
};

/// Compares the quadrature and analytic routes on a sampled grid of labels
/// with n <= n_max; pass means agreement to `tol` relative.
RadialCrossCheck radial_cross_check(int n_max, double tol = 1e-9);

/// Signed log-space evaluation of R_nl(r) (value = sign * exp(log_abs)).
struct SignedLog {
  double log_abs;
  double sign; // -1, 0, +1
  double value() const;
};
SignedLog radial_wavefunction_log(int n, int l, double r);
double radial_wavefunction(int n, int l, double r);
/// dR_nl/dr, direct evaluation (no finite differences).
double radial_wavefunction_deriv(int n, int l, double r);

} // namespace rydqed
