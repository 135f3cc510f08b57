#include "rydqed/abraham.hpp"

#include <cmath>
#include <functional>

#include "rydqed/kahan.hpp"
#include "rydqed/operators.hpp"

namespace rydqed {

std::string to_string(KappaChannel c) {
  switch (c) {
    case KappaChannel::k1a: return "k1a";
    case KappaChannel::k1b: return "k1b";
    case KappaChannel::k2: return "k2";
  }
  return "?";
}

double polarizability_closed(int n, int m) {
  if (n < 1) throw std::domain_error("polarizability_closed: n >= 1");
  const double nn = n, mm = m;
  return 0.125 * std::pow(nn, 4) * (17.0 * nn * nn - 9.0 * mm * mm + 19.0);
}

namespace {

double polarizability_sum_once(int n, int hi) {
  // 2 sum_j |<nC|z|j>|^2 / (E_j - E_nC) over discrete j; z conserves m so
  // only (n', n-2, n-1) and (n', n, n-1) couple to the circular state.
  const SphericalLabel nc = circular_state(n);
  const double e_n = energy_au(n);
  KahanReal sum;
  for (int np = 1; np <= hi; ++np) {
    if (np == n) continue;
    for (int l : {n - 2, n}) {
      const SphericalLabel j{np, l, n - 1};
      if (!j.valid()) continue;
      const double z = dipole_z(nc, j);
      if (z == 0.0) continue;
      sum += 2.0 * z * z / (energy_au(np) - e_n);
    }
  }
  return sum.value();
}

} // namespace

PolarizabilitySum polarizability_sum(int n, int basis_cutoff, double rel_tol) {
  if (basis_cutoff < n + 10)
    throw std::domain_error("polarizability_sum: cutoff must be >= n+10");
  PolarizabilitySum out;
  int hi = basis_cutoff;
  double prev = polarizability_sum_once(n, hi);
  for (int iter = 0; iter < 6; ++iter) {
    hi = n + 2 * (hi - n);
    const double next = polarizability_sum_once(n, hi);
    out.value = next;
    out.cutoff_used = hi;
    out.achieved_rel = std::abs(next - prev) / std::max(std::abs(next), 1e-300);
    if (out.achieved_rel < rel_tol) {
      out.converged = true;
      return out;
    }
    prev = next;
  }
  out.converged = false;
  return out;
}

AbrahamMomentum abraham_momentum(int n, const FieldConfiguration& fields) {
  const auto& c = constants();
  AbrahamMomentum am;
  am.polarizability_used = polarizability_closed(n, n - 1);
  const double alpha_si =
      am.polarizability_used * c.e_charge * c.e_charge * c.a0 * c.a0 /
      c.hartree_J();
  // E0 || z, B0 || x: alpha_zz E0 x B0 points along +y.
  am.vector_si = {0.0, alpha_si * fields.E0_V_per_m * fields.B0_T, 0.0};
  am.vector_au = {0.0,
                  am.polarizability_used * fields.E0_au() * fields.B0_au(),
                  0.0};
  return am;
}

// ---------------------------------------------------------------------------

namespace {

struct AdaptResult {
  double value = 0.0;
  bool converged = true;
  double rel_change = 0.0;
  int cutoff = 0;
};

AdaptResult adapt_cutoff(int n, int start_hi,
                         const std::function<double(int)>& compute,
                         double tol = 1e-3, int max_doublings = 3) {
  AdaptResult r;
  int hi = std::max(start_hi, n + 10);
  double prev = compute(hi);
  for (int i = 0; i < max_doublings; ++i) {
    hi = n + 2 * (hi - n);
    const double next = compute(hi);
    r.value = next;
    r.cutoff = hi;
    r.rel_change = std::abs(next - prev) / std::max(std::abs(next), 1e-300);
    if (r.rel_change < tol) {
      r.converged = true;
      return r;
    }
    prev = next;
  }
  r.converged = false;
  return r;
}

double kappa2_at_field(int n, double e0, int hi) {
  StarkBlock block(n, n - 1, 1, hi);
  const ParabolicLabel nc{0, 0, n - 1};
  const StateVector psi = block.assemble(nc, e0, 1);
  const CVec3 rhat = unit_rvec(psi, psi);
  const double u = rhat.z.real() / psi.norm_sq();
  return u / (2.0 * polarizability_closed(n, n - 1) * e0);
}

/// E0-linear part of <j, E0| L_x |nC, E0> for j outside the manifold
/// (without the B0/2 Zeeman prefactor).
double lx_element_linear(const SphericalLabel& j, int n, int m_sign,
                         const StateVector& psi1_c, double e0) {
  const int m_top = m_sign * (n - 1);
  const SphericalLabel lowered{n, n - 1, m_top - m_sign};
  const double lad = angular_momentum_x(lowered, {n, n - 1, m_top});
  KahanReal amp;
  for (const auto& t : psi1_c.terms)
    amp += t.coeff.real() * angular_momentum_x(j, t.label) * e0;
  if (j.m == lowered.m && std::abs(j.l - lowered.l) == 1)
    amp += e0 * dipole_z(lowered, j) / (energy_au(j.n) - energy_au(n)) * lad;
  return amp.value();
}

struct P1Sum {
  CVec3 s; // sum_j X_j Z_j / dE_j before the +c.c. assembly
};

double kappa_from_p1(const CVec3& s, int n, double e0, double b0,
                     double* leak) {
  // P1 = -(1/2) alpha^2 [S + c.c.] (relative-coordinate sign folded in);
  // kappa = yhat . P1 / (alpha^2 alpha_zz E0 B0).
  const Vec3 re = {s.x.real(), s.y.real(), s.z.real()};
  const double denom = polarizability_closed(n, n - 1) * e0 * b0;
  if (leak) {
    const double off = std::max(std::abs(re.x), std::abs(re.z));
    *leak = off / std::max(std::abs(re.y), 1e-300);
  }
  return -re.y / denom;
}

double kappa1b_at_field(int n, double e0, double b0, int hi) {
  StarkBlock block_c(n, n - 1, 1, hi);
  const ParabolicLabel nc{0, 0, n - 1};
  const auto& ex_c = block_c.expand(nc, 1);
  const SphericalLabel nc0 = circular_state(n);
  const double e_n = energy_au(n);

  KahanComplex sx, sy, sz;
  for (int np = 1; np <= hi; ++np) {
    if (np == n) continue;
    for (int l : {n - 2, n}) {
      for (int m : {n - 2, n}) {
        const SphericalLabel j{np, l, m};
        if (!j.valid()) continue;
        const double zel = lx_element_linear(j, n, +1, ex_c.psi1, e0);
        if (zel == 0.0) continue;
        const double z_j = 0.5 * b0 * zel / (e_n - energy_au(np));
        const CVec3 x_j = delta_dot_p(nc0, j);
        sx += x_j.x * z_j;
        sy += x_j.y * z_j;
        sz += x_j.z * z_j;
      }
    }
  }
  double leak = 0.0;
  return kappa_from_p1({sx.value(), sy.value(), sz.value()}, n, e0, b0,
                       &leak);
}

} // namespace

KappaResult kappa2(int n, double E0_V_per_m, int basis_cutoff) {
  if (n < 3) throw std::domain_error("kappa2: n must be >= 3");
  const double e0 = efield_si_to_au(E0_V_per_m);
  const AdaptResult ar = adapt_cutoff(
      n, basis_cutoff, [&](int hi) { return kappa2_at_field(n, e0, hi); });

  KappaResult kr;
  kr.n = n;
  kr.channel = KappaChannel::k2;
  kr.value = ar.value;
  kr.sign_vs_PA = kr.value >= 0.0 ? SignVsPA::parallel
                                  : SignVsPA::antiparallel;
  kr.diag.basis_cutoff = ar.cutoff;
  kr.diag.converged = ar.converged;
  kr.diag.cutoff_rel_change = ar.rel_change;
  const double half = kappa2_at_field(n, 0.5 * e0, ar.cutoff);
  kr.diag.e0_ratio_dev = std::abs(half / kr.value - 1.0);
  if (kr.diag.e0_ratio_dev > 0.01) kr.diag.converged = false;
  return kr;
}

KappaResult kappa1b(int n, double E0_V_per_m, double B0_T, int basis_cutoff) {
  if (n < 3) throw std::domain_error("kappa1b: n must be >= 3");
  FieldConfiguration fc{E0_V_per_m, B0_T};
  if (!fc.zeeman_weak(n))
    throw std::domain_error("kappa1b: Zeeman term not weak vs Stark");
  const double e0 = fc.E0_au(), b0 = fc.B0_au();

  const AdaptResult ar = adapt_cutoff(n, basis_cutoff, [&](int hi) {
    return kappa1b_at_field(n, e0, b0, hi);
  });

  KappaResult kr;
  kr.n = n;
  kr.channel = KappaChannel::k1b;
  kr.value = ar.value;
  kr.sign_vs_PA = kr.value >= 0.0 ? SignVsPA::parallel
                                  : SignVsPA::antiparallel;
  kr.diag.basis_cutoff = ar.cutoff;
  kr.diag.converged = ar.converged;
  kr.diag.cutoff_rel_change = ar.rel_change;
  kr.diag.e0_ratio_dev =
      std::abs(kappa1b_at_field(n, 0.5 * e0, b0, ar.cutoff) / kr.value - 1.0);
  kr.diag.b0_ratio_dev =
      std::abs(kappa1b_at_field(n, e0, 0.5 * b0, ar.cutoff) / kr.value - 1.0);
  if (kr.diag.e0_ratio_dev > 0.01 || kr.diag.b0_ratio_dev > 0.01)
    kr.diag.converged = false;
  return kr;
}

namespace {

struct Kappa1aTerms {
  CVec3 term_i, term_ii, term_iii, term_iv, term_inv;
  double leak = 0.0;
};

Kappa1aTerms kappa1a_terms(int n, double e0, double b0, int hi, int m_sign) {
  const int m_top = m_sign * (n - 1);
  StarkBlock block_c(n, m_top, 1, hi);
  StarkBlock block_j(n, m_top - m_sign, 1, hi);
  const ParabolicLabel nc{0, 0, m_top};
  const auto& exc = block_c.expand(nc, 2);

  const double hz = 0.5 * b0;

  Kappa1aTerms out;
  for (const auto& pj : block_j.manifold()) {
    if (pj.q() == 0) continue; // equal linear shifts: excluded by the sum
    const auto& exj = block_j.expand(pj, 2);
    const double d1 = -(exj.e1 * e0); // E1_nC = 0

    // X pieces: <nC| Delta.p |j>, orders 0, 1, 2 in E0
    const CVec3 x0 = delta_dot_p(exc.psi0, exj.psi0);
    CVec3 x1 = delta_dot_p(exc.psi0, exj.psi1) +
               delta_dot_p(exc.psi1, exj.psi0);
    x1 = x1 * std::complex<double>(e0, 0.0);
    CVec3 x2 = delta_dot_p(exc.psi0, exj.psi2) +
               delta_dot_p(exc.psi1, exj.psi1) +
               delta_dot_p(exc.psi2, exj.psi0);
    x2 = x2 * std::complex<double>(e0 * e0, 0.0);
    const double norm_corr = 0.5 * (exc.norm1_sq + exj.norm1_sq) * e0 * e0;
    x2 += x0 * std::complex<double>(-norm_corr, 0.0);

    // Z pieces: <j| H_Z |nC>
    const std::complex<double> z0 =
        hz * angular_momentum_x(exj.psi0, exc.psi0);
    const std::complex<double> z1 =
        hz * e0 *
        (angular_momentum_x(exj.psi1, exc.psi0) +
         angular_momentum_x(exj.psi0, exc.psi1));
    const std::complex<double> z2 =
        hz * e0 * e0 *
            (angular_momentum_x(exj.psi2, exc.psi0) +
             angular_momentum_x(exj.psi1, exc.psi1) +
             angular_momentum_x(exj.psi0, exc.psi2)) -
        norm_corr * z0;

    const double de2 = (exc.e2 - exj.e2) * e0 * e0;
    const double de3 = (exc.e3 - exj.e3) * e0 * e0 * e0;

    const std::complex<double> inv_d1{1.0 / d1, 0.0};
    out.term_i += (x2 * z0 + x1 * z1 + x0 * z2) * inv_d1;
    out.term_ii += (x1 * z0 + x0 * z1) * std::complex<double>(-de2 / (d1 * d1), 0.0);
    out.term_iii += x0 * z0 * std::complex<double>(-de3 / (d1 * d1), 0.0);
    out.term_iv += x0 * z0 * std::complex<double>(de2 * de2 / (d1 * d1 * d1), 0.0);
    out.term_inv += x0 * z0 * inv_d1;
  }
  return out;
}

} // namespace

KappaResult kappa1a(int n, double E0_V_per_m, double B0_T, int basis_cutoff,
                    bool include_inverse_E_term) {
  return kappa1a_oriented(n, E0_V_per_m, B0_T, basis_cutoff,
                          include_inverse_E_term, +1);
}

KappaResult kappa1a_oriented(int n, double E0_V_per_m, double B0_T,
                             int basis_cutoff, bool include_inverse_E_term,
                             int m_sign) {
  if (n < 3) throw std::domain_error("kappa1a: n must be >= 3");
  if (m_sign != 1 && m_sign != -1)
    throw std::domain_error("kappa1a: m_sign must be +-1");
  FieldConfiguration fc{E0_V_per_m, B0_T};
  if (!fc.zeeman_weak(n))
    throw std::domain_error("kappa1a: Zeeman term not weak vs Stark");
  const double e0 = fc.E0_au(), b0 = fc.B0_au();

  KappaResult kr;
  kr.n = n;
  kr.channel = KappaChannel::k1a;
  kr.include_inverse_E_term = include_inverse_E_term;

  double leak = 0.0;
  auto total_at = [&](int hi) {
    const Kappa1aTerms t = kappa1a_terms(n, e0, b0, hi, m_sign);
    CVec3 s = t.term_i + t.term_ii + t.term_iii + t.term_iv;
    if (include_inverse_E_term) s += t.term_inv;
    return kappa_from_p1(s, n, e0, b0, &leak);
  };
  const AdaptResult ar = adapt_cutoff(n, basis_cutoff, total_at);

  const Kappa1aTerms t = kappa1a_terms(n, e0, b0, ar.cutoff, m_sign);
  kr.term_second_order_wf = kappa_from_p1(t.term_i, n, e0, b0, nullptr);
  kr.term_e2_diff = kappa_from_p1(t.term_ii, n, e0, b0, nullptr);
  kr.term_e3_diff = kappa_from_p1(t.term_iii, n, e0, b0, nullptr);
  kr.term_e2sq_diff = kappa_from_p1(t.term_iv, n, e0, b0, nullptr);
  kr.term_inverse_field = kappa_from_p1(t.term_inv, n, e0, b0, nullptr);

  kr.value = ar.value;
  kr.sign_vs_PA = kr.value >= 0.0 ? SignVsPA::parallel
                                  : SignVsPA::antiparallel;
  kr.diag.basis_cutoff = ar.cutoff;
  kr.diag.converged = ar.converged;
  kr.diag.cutoff_rel_change = ar.rel_change;
  kr.diag.transverse_leak = leak;
  return kr;
}

double kappa1a_reference_fit(int n) {
  const double x = 50.0 / n;
  return 2.78 + 5.788e-2 * x * x - 1.05e-1 * x;
}

} // namespace rydqed
