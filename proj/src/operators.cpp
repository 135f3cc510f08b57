#include "rydqed/operators.hpp"

#include <cmath>

#include "rydqed/kahan.hpp"
#include "rydqed/radial.hpp"

namespace rydqed {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// <l+1, m | cos(theta) | l, m>
double cos_up(int l, int m) {
  const double num = (l + 1.0) * (l + 1.0) - m * m;
  return std::sqrt(num / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
// <l+1, m+1 | sin(theta) e^{i phi} | l, m>
double sinp_up(int l, int m) {
  return -std::sqrt((l + m + 1.0) * (l + m + 2.0) /
                    ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
// <l-1, m+1 | sin(theta) e^{i phi} | l, m>
double sinp_down(int l, int m) {
  return std::sqrt((l - m) * (l - m - 1.0) /
                   ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
}
// <l+1, m-1 | sin(theta) e^{-i phi} | l, m>
double sinm_up(int l, int m) {
  return std::sqrt((l - m + 1.0) * (l - m + 2.0) /
                   ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
// <l-1, m-1 | sin(theta) e^{-i phi} | l, m>
double sinm_down(int l, int m) {
  return -std::sqrt((l + m) * (l + m - 1.0) /
                    ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
}

// Radial factor of the gradient operator between shells:
// l -> l+1 couples through (d/dr - l/r), l -> l-1 through (d/dr + (l+1)/r).
double gradient_radial(int n_to, int l_to, int n_from, int l_from) {
  const double deriv = radial_deriv_moment(n_to, l_to, n_from, l_from, 0);
  if (l_to == l_from + 1)
    return deriv - l_from * radial_moment(n_to, l_to, n_from, l_from, -1);
  return deriv + (l_from + 1.0) * radial_moment(n_to, l_to, n_from, l_from, -1);
}

template <class RadialFn>
CVec3 rank1_vector_element(const SphericalLabel& a, const SphericalLabel& b,
                           RadialFn radial) {
  a.require_valid();
  b.require_valid();
  std::complex<double> v_m1{}, v_0{}, v_p1{};
  if (std::abs(a.l - b.l) == 1) {
    const double rad = radial(a, b);
    for (int q = -1; q <= 1; ++q) {
      if (a.m != b.m + q) continue;
      const double ang = rhat_angular(a.l, a.m, b.l, b.m, q);
      if (q == -1) v_m1 = ang * rad;
      if (q == 0) v_0 = ang * rad;
      if (q == +1) v_p1 = ang * rad;
    }
  }
  return cartesian_from_spherical(v_m1, v_0, v_p1);
}

} // namespace

double rhat_angular(int l_to, int m_to, int l_from, int m_from, int q) {
  if (m_to != m_from + q) return 0.0;
  if (q == 0) {
    if (l_to == l_from + 1) return cos_up(l_from, m_from);
    if (l_to == l_from - 1) return cos_up(l_to, m_from);
    return 0.0;
  }
  if (q == +1) {
    // rhat_{+1} = -(1/sqrt2) sin(theta) e^{i phi}
    if (l_to == l_from + 1) return -kInvSqrt2 * sinp_up(l_from, m_from);
    if (l_to == l_from - 1) return -kInvSqrt2 * sinp_down(l_from, m_from);
    return 0.0;
  }
  // rhat_{-1} = +(1/sqrt2) sin(theta) e^{-i phi}
  if (l_to == l_from + 1) return kInvSqrt2 * sinm_up(l_from, m_from);
  if (l_to == l_from - 1) return kInvSqrt2 * sinm_down(l_from, m_from);
  return 0.0;
}

double dipole_z(const SphericalLabel& a, const SphericalLabel& b) {
  a.require_valid();
  b.require_valid();
  if (a.m != b.m || std::abs(a.l - b.l) != 1) return 0.0;
  return rhat_angular(a.l, a.m, b.l, b.m, 0) *
         radial_moment(a.n, a.l, b.n, b.l, 1);
}

CVec3 position_vector(const SphericalLabel& a, const SphericalLabel& b) {
  return rank1_vector_element(a, b, [](const SphericalLabel& x,
                                       const SphericalLabel& y) {
    return radial_moment(x.n, x.l, y.n, y.l, 1);
  });
}

CVec3 unit_rvec(const SphericalLabel& a, const SphericalLabel& b) {
  return rank1_vector_element(a, b, [](const SphericalLabel& x,
                                       const SphericalLabel& y) {
    return radial_moment(x.n, x.l, y.n, y.l, 0);
  });
}

double angular_momentum_x(const SphericalLabel& a, const SphericalLabel& b) {
  a.require_valid();
  b.require_valid();
  if (a.n != b.n || a.l != b.l) return 0.0;
  const int l = b.l, m = b.m;
  if (a.m == m + 1) return 0.5 * std::sqrt((l - m) * (l + m + 1.0));
  if (a.m == m - 1) return 0.5 * std::sqrt((l + m) * (l - m + 1.0));
  return 0.0;
}

double angular_momentum_y_imag(const SphericalLabel& a,
                               const SphericalLabel& b) {
  // <a|L_y|b> = i * (this value); L_y = (L+ - L-)/(2i).
  if (a.n != b.n || a.l != b.l) return 0.0;
  const int l = b.l, m = b.m;
  if (a.m == m + 1) return -0.5 * std::sqrt((l - m) * (l + m + 1.0));
  if (a.m == m - 1) return 0.5 * std::sqrt((l + m) * (l - m + 1.0));
  return 0.0;
}

double angular_momentum_z(const SphericalLabel& a, const SphericalLabel& b) {
  if (a.n != b.n || a.l != b.l || a.m != b.m) return 0.0;
  return b.m;
}

CVec3 momentum_p(const SphericalLabel& a, const SphericalLabel& b) {
  const double de = energy_au(a.n) - energy_au(b.n);
  if (de == 0.0) return {};
  const std::complex<double> i_de{0.0, de};
  return i_de * position_vector(a, b);
}

CVec3 momentum_gradient(const SphericalLabel& a, const SphericalLabel& b) {
  // p = -i grad; shares the rank-1 angular factors of rhat.
  const std::complex<double> minus_i{0.0, -1.0};
  return minus_i * rank1_vector_element(
                       a, b, [](const SphericalLabel& x,
                                const SphericalLabel& y) {
                         return gradient_radial(x.n, x.l, y.n, y.l);
                       });
}

CVec3 delta_dot_p(const SphericalLabel& a, const SphericalLabel& b) {
  // (Delta . p)_i = -i [ 2 rhat_i r^{-1} d/dr + r^{-2} (grad_Omega)_i ];
  // the angular-gradient piece carries -l (l -> l+1) or +(l+1) (l -> l-1)
  // times the rhat angular factor.
  const std::complex<double> minus_i{0.0, -1.0};
  return minus_i *
         rank1_vector_element(a, b, [](const SphericalLabel& x,
                                       const SphericalLabel& y) {
           const double j1 = radial_deriv_moment(x.n, x.l, y.n, y.l, -1);
           const double j2 = radial_moment(x.n, x.l, y.n, y.l, -2);
           const double c_omega =
               (x.l == y.l + 1) ? -static_cast<double>(y.l) : (y.l + 1.0);
           return 2.0 * j1 + c_omega * j2;
         });
}

// --- StateVector-level ------------------------------------------------------

namespace {

template <class ElemFn>
std::complex<double> contract_scalar(const StateVector& A,
                                     const StateVector& B, ElemFn elem) {
  KahanComplex sum;
  for (const auto& ta : A.terms)
    for (const auto& tb : B.terms) {
      const auto v = elem(ta.label, tb.label);
      if (v != std::complex<double>{})
        sum += std::conj(ta.coeff) * tb.coeff * v;
    }
  return sum.value();
}

template <class ElemFn>
CVec3 contract_vector(const StateVector& A, const StateVector& B,
                      ElemFn elem) {
  KahanComplex sx, sy, sz;
  for (const auto& ta : A.terms)
    for (const auto& tb : B.terms) {
      if (std::abs(ta.label.l - tb.label.l) != 1 ||
          std::abs(ta.label.m - tb.label.m) > 1)
        continue;
      const CVec3 v = elem(ta.label, tb.label);
      const std::complex<double> w = std::conj(ta.coeff) * tb.coeff;
      sx += w * v.x;
      sy += w * v.y;
      sz += w * v.z;
    }
  return {sx.value(), sy.value(), sz.value()};
}

} // namespace

std::complex<double> dipole_z(const StateVector& A, const StateVector& B) {
  return contract_scalar(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    if (a.m != b.m || std::abs(a.l - b.l) != 1) return 0.0;
    return dipole_z(a, b);
  });
}

CVec3 position_vector(const StateVector& A, const StateVector& B) {
  return contract_vector(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    return position_vector(a, b);
  });
}

CVec3 unit_rvec(const StateVector& A, const StateVector& B) {
  return contract_vector(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    return unit_rvec(a, b);
  });
}

std::complex<double> angular_momentum_x(const StateVector& A,
                                        const StateVector& B) {
  return contract_scalar(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    return angular_momentum_x(a, b);
  });
}

CVec3 momentum_p(const StateVector& A, const StateVector& B) {
  return contract_vector(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    return momentum_p(a, b);
  });
}

CVec3 delta_dot_p(const StateVector& A, const StateVector& B) {
  return contract_vector(A, B, [](const SphericalLabel& a,
                                  const SphericalLabel& b) {
    return delta_dot_p(a, b);
  });
}

Vec3 angular_momentum_expectation(const StateVector& A) {
  KahanComplex sx, sy, sz;
  for (const auto& ta : A.terms)
    for (const auto& tb : A.terms) {
      if (ta.label.n != tb.label.n || ta.label.l != tb.label.l) continue;
      const std::complex<double> w = std::conj(ta.coeff) * tb.coeff;
      sx += w * angular_momentum_x(ta.label, tb.label);
      sy += w * std::complex<double>{0.0, 1.0} *
            angular_momentum_y_imag(ta.label, tb.label);
      sz += w * angular_momentum_z(ta.label, tb.label);
    }
  return {sx.value().real(), sy.value().real(), sz.value().real()};
}

namespace {

/// <a| (1/r) p_q |b>: gradient decomposition with an extra 1/r weight,
/// radial parts from the derivative and power -2 moments.
CVec3 inv_r_momentum(const SphericalLabel& a, const SphericalLabel& b) {
  const std::complex<double> minus_i{0.0, -1.0};
  return minus_i *
         rank1_vector_element(a, b, [](const SphericalLabel& x,
                                       const SphericalLabel& y) {
           const double j1 = radial_deriv_moment(x.n, x.l, y.n, y.l, -1);
           const double j2 = radial_moment(x.n, x.l, y.n, y.l, -2);
           const double c_omega =
               (x.l == y.l + 1) ? -static_cast<double>(y.l) : (y.l + 1.0);
           return j1 + c_omega * j2;
         });
}

} // namespace

P2PResult p2_p(const StateVector& A, const StateVector& B,
               const P2POptions& opt) {
  // p^2 acting left on eigenstates: <a| p^2 p_i |b> =
  //   2 [ E_a <a| p_i |b> + <a| (1/r) p_i |b> ],
  // both factors in closed radial-angular form, so no basis insertion and
  // no truncation error.
  (void)opt;
  KahanComplex sx, sy, sz;
  for (const auto& ta : A.terms)
    for (const auto& tb : B.terms) {
      if (std::abs(ta.label.l - tb.label.l) != 1 ||
          std::abs(ta.label.m - tb.label.m) > 1)
        continue;
      const CVec3 p = momentum_p(ta.label, tb.label);
      const CVec3 rp = inv_r_momentum(ta.label, tb.label);
      const std::complex<double> w = std::conj(ta.coeff) * tb.coeff;
      const double ea = energy_au(ta.label.n);
      sx += w * 2.0 * (ea * p.x + rp.x);
      sy += w * 2.0 * (ea * p.y + rp.y);
      sz += w * 2.0 * (ea * p.z + rp.z);
    }
  P2PResult out;
  out.value = {sx.value(), sy.value(), sz.value()};
  out.converged = true;
  out.achieved_rel = 0.0;
  return out;
}

P2PResult p2_p(const SphericalLabel& a, const SphericalLabel& b,
               const P2POptions& opt) {
  StateVector A{{{a, {1.0, 0.0}}}, energy_au(a.n), NormTag::normalized};
  StateVector B{{{b, {1.0, 0.0}}}, energy_au(b.n), NormTag::normalized};
  return p2_p(A, B, opt);
}

} // namespace rydqed
