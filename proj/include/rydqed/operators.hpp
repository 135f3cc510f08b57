#pragma once

#include <complex>
#include <vector>

#include "rydqed/basis.hpp"
#include "rydqed/vec3.hpp"

namespace rydqed {

// Matrix elements below use the electron relative coordinate with standard
// hydrogen wavefunctions (radial functions positive at the origin,
// Condon-Shortley spherical harmonics). Atomic units throughout.

/// <l' m'| rhat_q |l m> angular factor, q in {-1, 0, +1}; rhat_q are the
/// Condon-Shortley spherical components of the unit position vector.
double rhat_angular(int l_to, int m_to, int l_from, int m_from, int q);

/// <a| z |b>; zero unless m_a = m_b and |l_a - l_b| = 1.
double dipole_z(const SphericalLabel& a, const SphericalLabel& b);

/// Cartesian components of <a| r |b>.
CVec3 position_vector(const SphericalLabel& a, const SphericalLabel& b);

/// Cartesian components of <a| rhat |b>.
CVec3 unit_rvec(const SphericalLabel& a, const SphericalLabel& b);

/// <a| L_x |b> in units of hbar; ladder-operator route, nonzero only for
/// n_a = n_b, l_a = l_b, |m_a - m_b| = 1.
double angular_momentum_x(const SphericalLabel& a, const SphericalLabel& b);
double angular_momentum_y_imag(const SphericalLabel& a,
                               const SphericalLabel& b);
double angular_momentum_z(const SphericalLabel& a, const SphericalLabel& b);

/// <a| p |b> by the commutator route i (E_a - E_b) <a| r |b>.
/// Exact zero for degenerate pairs.
CVec3 momentum_p(const SphericalLabel& a, const SphericalLabel& b);

/// <a| p |b> by the gradient route (radial derivative plus centrifugal
/// terms). Equal to momentum_p on eigenstate pairs; kept as the second
/// algebraic path.
CVec3 momentum_gradient(const SphericalLabel& a, const SphericalLabel& b);

/// <a| r^{-1}(1 + rhat rhat) . p |b>, the vacuum-coupling vector operator.
CVec3 delta_dot_p(const SphericalLabel& a, const SphericalLabel& b);

struct P2POptions {
  int basis_n_max = 0;   // unused by the closed evaluation; kept for callers
  double rel_tol = 1e-6;
};

struct P2PResult {
  CVec3 value;
  bool converged = true;
  double achieved_rel = 0.0;
};

/// <a| p^2 p |b> with p^2 from the kinetic-energy route
/// p^2 = 2 (H + 1/r) acting on the bra; the 1/r p piece evaluates in
/// closed radial-angular form. Nonzero for degenerate same-n pairs (only
/// <x_i/r^3> is forced to vanish there, not <(1/r) p_i>).
P2PResult p2_p(const SphericalLabel& a, const SphericalLabel& b,
               const P2POptions& opt = {});

// --- StateVector-level contractions --------------------------------------

std::complex<double> dipole_z(const StateVector& A, const StateVector& B);
CVec3 position_vector(const StateVector& A, const StateVector& B);
CVec3 unit_rvec(const StateVector& A, const StateVector& B);
std::complex<double> angular_momentum_x(const StateVector& A,
                                        const StateVector& B);
/// <A| p |B> summed component-wise with per-pair eigenenergies.
CVec3 momentum_p(const StateVector& A, const StateVector& B);
CVec3 delta_dot_p(const StateVector& A, const StateVector& B);
P2PResult p2_p(const StateVector& A, const StateVector& B,
               const P2POptions& opt = {});
/// Expectation <A| L |A> (units hbar).
Vec3 angular_momentum_expectation(const StateVector& A);

} // namespace rydqed
