#include "rydqed/ac_vacuum.hpp"

#include <cmath>
#include <stdexcept>

#include "rydqed/kahan.hpp"
#include "rydqed/operators.hpp"
#include "rydqed/perturb.hpp"
#include "rydqed/quadrature.hpp"

namespace rydqed {

namespace {

constexpr double kPi = 3.14159265358979323846;

double renorm_log(const AtomSpec& atom) {
  return std::log(atom.mass_ratio());
}

} // namespace

double SuperpositionState::norm_sq() const {
  KahanReal s;
  for (const auto& c : components) s += std::norm(c.beta);
  return s.value();
}

IntegralResult renorm_combination(double m1_kg, double m2_kg) {
  if (m1_kg == m2_kg) return {0.0, 0.0, std::nullopt, false};
  if (!(m1_kg > m2_kg) || m2_kg <= 0.0)
    throw std::domain_error("renorm_combination: need m1 > m2 > 0");
  const double alpha = constants().alpha;
  const double rho = m1_kg / m2_kg;
  // dimensionless u = hbar k / (m2 c0):
  // (4 alpha / 3 pi) int du [1/(rho + u/2) - 1/(1 + u/2)]
  auto f = [rho](double u) {
    return 1.0 / (rho + 0.5 * u) - 1.0 / (1.0 + 0.5 * u);
  };
  const double u_lo = 1e-12, u_hi = 1e12 * rho;
  QuadResult q = integrate_log_grid(f, u_lo, u_hi, 1e-12);
  // head contribution is f(0) u_lo at most; tail falls off as 1/u^2
  const double head_bound = std::abs(f(0.0)) * u_lo;
  const double tail_bound = 4.0 * rho / u_hi;
  const double pref = 4.0 * alpha / (3.0 * kPi);
  IntegralResult res;
  res.value = pref * q.value;
  res.abs_error = pref * (q.abs_error + head_bound + tail_bound);
  res.flagged = !q.converged;
  return res;
}

IntegralResult delta_m(double mass_kg, double k_cutoff_inv_m) {
  if (!(mass_kg > 0.0))
    throw std::domain_error("delta_m: mass must be positive");
  if (!std::isfinite(k_cutoff_inv_m) || !(k_cutoff_inv_m > 0.0))
    throw std::invalid_argument(
        "delta_m: finite positive cutoff required (integral diverges)");
  const auto& c = constants();
  const double alpha = c.alpha;
  // u = hbar k/(m c0): delta_m = (4 alpha/3 pi) m int_0^U du/(1 + u/2)
  const double U = c.hbar * k_cutoff_inv_m / (mass_kg * c.c0);
  auto f = [](double u) { return 1.0 / (1.0 + 0.5 * u); };
  const double u_lo = 1e-12;
  QuadResult q = integrate_log_grid(f, u_lo, U, 1e-12);
  const double pref = 4.0 * alpha / (3.0 * kPi) * mass_kg;
  IntegralResult res;
  res.value = pref * (q.value + u_lo); // head [0, u_lo] where f ~ 1
  res.abs_error = pref * q.abs_error;
  res.cutoff_used = k_cutoff_inv_m;
  res.flagged = !q.converged;
  return res;
}

RatioResult relativistic_ratio(double m1_kg, double m2_kg) {
  if (!(m2_kg > 0.0) || m1_kg < m2_kg)
    throw std::domain_error("relativistic_ratio: need m1 >= m2 > 0");
  RatioResult out;
  if (m1_kg == m2_kg) {
    // both integrals vanish; 1/4 by continuity
    out.degenerate_input = true;
    return out;
  }
  const double rho = m1_kg / m2_kg;
  // g(u, a) = 1 / (s (1 + u/(s + a))), s = sqrt(u^2 + a^2): stable form of
  // u / (s (s + u - a)).
  auto g = [](double u, double a) {
    const double s = std::hypot(u, a);
    return 1.0 / (s * (1.0 + u / (s + a)));
  };
  auto f = [&](double u) { return g(u, rho) - g(u, 1.0); };
  const double u_hi = 1e9 * rho;
  QuadResult q = integrate_log_grid(f, 1e-10, u_hi, 1e-11);
  // small-u head: integrand ~ (1/rho - 1), linear correction negligible
  const double head = (1.0 / rho - 1.0) * 1e-10;
  // large-u tail: f ~ (rho - 1)/(4 u^2) * 4 ... falls off as 1/u^2; bound it
  const double tail_bound = 2.0 * rho / u_hi;
  const double i_rel = q.value + head;
  const double i_nonrel = -2.0 * std::log(rho);
  out.ratio = i_rel / i_nonrel;
  out.abs_error = (q.abs_error + tail_bound) / std::abs(i_nonrel);
  out.flagged = !q.converged;
  return out;
}

double stark_frequency(int n, double E0_V_per_m) {
  if (n < 2) throw std::domain_error("stark_frequency: n must be >= 2");
  if (!(E0_V_per_m > 0.0))
    throw std::domain_error("stark_frequency: E0 must be positive");
  const auto& c = constants();
  return 1.5 * n * c.e_charge * c.a0 * E0_V_per_m / c.hbar;
}

SuperpositionState nR_state(int n, double t_s, double E0_V_per_m) {
  if (n < 3) throw std::domain_error("nR_state: n must be >= 3");
  const double omega = stark_frequency(n, E0_V_per_m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SuperpositionState s;
  s.n = n;
  s.time_s = t_s;
  s.components.push_back({{0, 0, n - 1}, {inv_sqrt2, 0.0}});
  s.components.push_back(
      {{1, 0, n - 2}, std::polar(inv_sqrt2, -omega * t_s)});
  return s;
}

namespace {

/// gamma_{l l'} phase factors and the bare spherical expansions of the nR
/// components.
struct NRFrame {
  std::vector<StateVector> bare;
  std::vector<std::complex<double>> beta;
  int n;
};

NRFrame nr_frame(const SuperpositionState& s) {
  NRFrame f;
  f.n = s.n;
  for (const auto& c : s.components) {
    f.bare.push_back(parabolic_to_spherical(c.label));
    f.beta.push_back(c.beta);
  }
  return f;
}

} // namespace

AngularMomentumT angular_momentum_t(int n, double t_s, double E0_V_per_m) {
  const SuperpositionState s = nR_state(n, t_s, E0_V_per_m);
  const NRFrame f = nr_frame(s);

  // direct route: assemble the full spherical vector, apply L
  StateVector full;
  full.norm_tag = NormTag::normalized;
  full.energy = energy_au(n);
  for (std::size_t i = 0; i < f.bare.size(); ++i)
    for (const auto& t : f.bare[i].terms)
      full.terms.push_back({t.label, t.coeff * f.beta[i]});
  full.compress();
  AngularMomentumT out;
  out.direct = angular_momentum_expectation(full);

  const double phi = stark_frequency(n, E0_V_per_m) * t_s;
  const double amp = 0.5 * std::sqrt(n - 1.0);
  out.closed = {amp * std::cos(phi), -amp * std::sin(phi), n - 1.5};

  const double diff = std::max({std::abs(out.closed.x - out.direct.x),
                                std::abs(out.closed.y - out.direct.y),
                                std::abs(out.closed.z - out.direct.z)});
  if (diff > 1e-10 * std::max(1.0, out.closed.norm()))
    throw std::runtime_error(
        "angular_momentum_t: closed and direct routes disagree");
  return out;
}

namespace {

/// <L(t)> and <d(t)> (atomic units, d = -<r_e>) for the bare nR dynamics.
struct BareDynamics {
  Vec3 L;
  Vec3 d;
};

BareDynamics bare_dynamics(int n, double omega_au, double t_au) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  StateVector full;
  full.norm_tag = NormTag::normalized;
  full.energy = energy_au(n);
  const StateVector b0 = parabolic_to_spherical({0, 0, n - 1});
  const StateVector b1 = parabolic_to_spherical({1, 0, n - 2});
  const std::complex<double> ph = std::polar(inv_sqrt2, -omega_au * t_au);
  for (const auto& t : b0.terms)
    full.terms.push_back({t.label, t.coeff * inv_sqrt2});
  for (const auto& t : b1.terms)
    full.terms.push_back({t.label, t.coeff * ph});
  full.compress();

  BareDynamics bd;
  bd.L = angular_momentum_expectation(full);
  const CVec3 r = position_vector(full, full);
  bd.d = {-r.x.real(), -r.y.real(), -r.z.real()};
  return bd;
}

} // namespace

double torque_residual(int n, double E0_V_per_m, double t_s) {
  if (n < 3) throw std::domain_error("torque_residual: n must be >= 3");
  const auto& c = constants();
  const double e0 = efield_si_to_au(E0_V_per_m);
  const double omega_au = 1.5 * n * e0; // Stark frequency in 1/t_au
  const double t_au = t_s / c.time_au_SI();

  auto L_of = [&](double t) { return bare_dynamics(n, omega_au, t).L; };

  // fourth-order central differences at two step sizes + Richardson
  auto dL = [&](double h) {
    const Vec3 a = L_of(t_au + h), b = L_of(t_au - h);
    const Vec3 a2 = L_of(t_au + 2 * h), b2 = L_of(t_au - 2 * h);
    return (8.0 * (a - b) - (a2 - b2)) * (1.0 / (12.0 * h));
  };
  const double h0 = 1e-2 / omega_au;
  const Vec3 d1 = dL(h0), d2 = dL(h0 / 2.0);
  const Vec3 fd = d2 + (d2 - d1) * (1.0 / 15.0);

  const BareDynamics bd = bare_dynamics(n, omega_au, t_au);
  const Vec3 torque = Vec3::cross(bd.d, {0.0, 0.0, e0});
  const Vec3 resid = fd - torque;
  return resid.norm() / torque.norm();
}

namespace {

/// gamma-weighted sum of a pair operator over the Stark-dressed nR
/// components; first-order energies set the phases.
template <class PairFn>
CVec3 nr_pair_sum(int n, double e0_au, double t_au, int cutoff, PairFn fn) {
  const int hi = cutoff > 0 ? cutoff : n + 15;
  StarkBlock block_c(n, n - 1, 1, hi);
  StarkBlock block_j(n, n - 2, 1, hi);
  const ParabolicLabel lc{0, 0, n - 1};
  const ParabolicLabel lj{1, 0, n - 2};
  const StateVector vc = block_c.assemble(lc, e0_au, 1);
  const StateVector vj = block_j.assemble(lj, e0_au, 1);
  const double norm = 1.0 / std::sqrt(vc.norm_sq() * vj.norm_sq());

  const double de = stark_shift_order1(lj, e0_au); // E_j - E_c
  const std::complex<double> gamma_cj =
      0.5 * std::polar(1.0, +de * t_au); // beta_c beta_j^* e^{-i(Ec-Ej)t}
  const std::complex<double> gamma_jc = std::conj(gamma_cj);

  // <p> of each dressed state alone vanishes; only coherences contribute.
  const CVec3 m_jc = fn(vj, vc); // <j| Op |c>
  const CVec3 m_cj = fn(vc, vj);
  CVec3 out;
  out += gamma_jc * m_jc; // beta_j^* beta_c ... <j|Op|c>
  out += gamma_cj * m_cj;
  return out * std::complex<double>(norm, 0.0);
}

} // namespace

Vec3 ac_momentum(int n, double E0_V_per_m, double t_s, bool apply_quarter,
                 const AtomSpec& atom, int basis_cutoff) {
  if (n < 3) throw std::domain_error("ac_momentum: n must be >= 3");
  atom.validate();
  const auto& c = constants();
  const double e0 = efield_si_to_au(E0_V_per_m);
  const double t_au = t_s / c.time_au_SI();

  const CVec3 p_e = nr_pair_sum(
      n, e0, t_au, basis_cutoff,
      [](const StateVector& a, const StateVector& b) {
        return momentum_p(a, b);
      });
  if (p_e.max_imag() > 1e-10 * std::max(p_e.max_abs(), 1e-300))
    throw std::runtime_error("ac_momentum: expectation not real");

  // internal momentum of the relative coordinate r1 - r2 flips sign against
  // the electron-coordinate matrix elements; mu/m_e restores the reduced
  // mass in <p> = mu d<r>/dt.
  const double mu_ratio = atom.reduced_mass() / constants().m_e;
  const double pref = (8.0 * c.alpha / (3.0 * kPi)) * renorm_log(atom) *
                      (apply_quarter ? 0.25 : 1.0) * mu_ratio;
  const Vec3 p_paper = {-p_e.x.real(), -p_e.y.real(), -p_e.z.real()};
  return (-pref) * p_paper * c.momentum_au_SI();
}

ACResult ac_amplitude(int n, double E0_V_per_m, const AtomSpec& atom,
                      bool apply_quarter) {
  if (n < 3) throw std::domain_error("ac_amplitude: n must be >= 3");
  atom.validate();
  const auto& c = constants();
  ACResult r;
  r.relativistic_quarter_applied = apply_quarter;
  r.stark_omega = stark_frequency(n, E0_V_per_m);
  const double quarter = apply_quarter ? 1.0 : 4.0;
  // bare closed form (3/(4 pi)) n^2 sqrt(n-1) e a0 E0/c0, quarter applied
  r.p_long_amplitude = quarter * (3.0 / (4.0 * kPi)) * n * n *
                       std::sqrt(n - 1.0) * c.e_charge * c.a0 * E0_V_per_m /
                       c.c0;
  r.renorm_log_factor = renorm_log(atom) * atom.reduced_mass() / c.m_e;
  r.p_long_amplitude_renorm = r.p_long_amplitude * r.renorm_log_factor;
  // displacement, closed-form route (n/8) sqrt(n-1) 1e-15 (m_p/M) m
  r.displacement = (n / 8.0) * std::sqrt(n - 1.0) * 1e-15 *
                   (c.m_p / atom.total_mass());
  r.displacement_from_momentum =
      r.p_long_amplitude / (atom.total_mass() * r.stark_omega);
  r.force = r.stark_omega * r.p_long_amplitude;
  r.force_renorm = r.stark_omega * r.p_long_amplitude_renorm;
  return r;
}

TransverseResult transverse_estimate(int n, double E0_V_per_m, double t_s,
                                     TripleMomentumVariant variant,
                                     bool apply_quarter, const AtomSpec& atom,
                                     int basis_cutoff) {
  if (n < 3) throw std::domain_error("transverse_estimate: n must be >= 3");
  const auto& c = constants();
  const double e0 = efield_si_to_au(E0_V_per_m);
  const double t_au = t_s / c.time_au_SI();

  bool converged = true;
  const CVec3 p3_e = nr_pair_sum(
      n, e0, t_au, basis_cutoff,
      [&](const StateVector& a, const StateVector& b) {
        const P2PResult r = p2_p(a, b);
        converged = converged && r.converged;
        return r.value;
      });
  const double coeff =
      variant == TripleMomentumVariant::contracted_tensor ? 2.0 / 15.0 : 1.0;
  // p^3 is odd under the electron -> relative coordinate flip
  const double a3 = std::pow(c.alpha, 3);
  TransverseResult out;
  out.converged = converged;
  out.value_si = Vec3{-p3_e.x.real(), -p3_e.y.real(), -p3_e.z.real()} *
                 (a3 * coeff * c.momentum_au_SI());

  const Vec3 p_long = ac_momentum(n, E0_V_per_m, t_s, apply_quarter, atom,
                                  basis_cutoff);
  out.ratio_to_long = out.value_si.norm() / p_long.norm();
  const double a2 = c.alpha * c.alpha;
  out.within_band = out.ratio_to_long >= a2 / 30.0 &&
                    out.ratio_to_long <= 30.0 * a2;
  return out;
}

} // namespace rydqed
