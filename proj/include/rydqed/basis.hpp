#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydqed {

/// Bound hydrogen state in the spherical basis (n, l, m).
struct SphericalLabel {
  int n = 1;
  int l = 0;
  int m = 0;

  bool valid() const { return n >= 1 && l >= 0 && l <= n - 1 && std::abs(m) <= l; }
  void require_valid() const {
    if (!valid())
      throw std::domain_error("invalid spherical label (n,l,m)=(" +
                              std::to_string(n) + "," + std::to_string(l) +
                              "," + std::to_string(m) + ")");
  }
  friend bool operator==(const SphericalLabel& a, const SphericalLabel& b) {
    return a.n == b.n && a.l == b.l && a.m == b.m;
  }
  friend bool operator<(const SphericalLabel& a, const SphericalLabel& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.l != b.l) return a.l < b.l;
    return a.m < b.m;
  }
};

/// Bound hydrogen state in the parabolic basis (n1, n2, m);
/// the principal quantum number is n = n1 + n2 + |m| + 1.
struct ParabolicLabel {
  int n1 = 0;
  int n2 = 0;
  int m = 0;

  int n() const { return n1 + n2 + std::abs(m) + 1; }
  /// Electric quantum number n1 - n2 (sets the linear Stark shift).
  int q() const { return n1 - n2; }
  bool valid() const { return n1 >= 0 && n2 >= 0; }
  void require_valid() const {
    if (!valid())
      throw std::domain_error("invalid parabolic label: n1, n2 must be >= 0");
  }
  friend bool operator==(const ParabolicLabel& a, const ParabolicLabel& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.m == b.m;
  }
};

enum class NormTag { normalized, first_order_truncated };

struct StateTerm {
  SphericalLabel label;
  std::complex<double> coeff;
};

/// Coefficient expansion over spherical labels with energy metadata (Hartree).
struct StateVector {
  std::vector<StateTerm> terms;
  double energy = 0.0;
  NormTag norm_tag = NormTag::normalized;

  double norm_sq() const;
  /// Drops terms with |c| below `eps` and merges duplicate labels.
  void compress(double eps = 0.0);
  /// Enforces distinct labels / unit norm on normalized vectors.
  void check_invariants(double tol = 1e-12) const;
};

/// Bound-state energy, -1/(2 n^2) Hartree. Throws on n < 1.
double energy_au(int n);

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>.
/// Returns 0 when selection rules fail; throws on broken quantization
/// (non-half-integer inputs or j/m of mixed integer character).
double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M);

/// Same, with all arguments doubled so half-integers stay exact.
double clebsch_gordan_2(int dj1, int dm1, int dj2, int dm2, int dJ, int dM);

/// Expansion of a parabolic state over the spherical basis of its manifold.
/// Phases follow Condon-Shortley; the orientation is fixed so that
/// <n1 n2 m| z |n1 n2 m> = +(3/2) n (n1 - n2) a0.
StateVector parabolic_to_spherical(const ParabolicLabel& p);

/// The circular state label (n, n-1, n-1).
SphericalLabel circular_state(int n);

/// All parabolic labels of the degenerate manifold of level n (n^2 of them).
std::vector<ParabolicLabel> subspace(int n);

std::string to_json(const SphericalLabel& s);
std::string to_json(const ParabolicLabel& p);

} // namespace rydqed
