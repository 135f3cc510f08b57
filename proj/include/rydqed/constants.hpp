#pragma once

#include <cmath>
#include <stdexcept>

namespace rydqed {

/// CODATA 2018 values. All internal computation runs in Hartree atomic
/// units; these constants convert to and from SI at the boundaries.
struct PhysicalConstants {
  double alpha = 7.2973525693e-3;    // fine-structure constant
  double a0 = 5.29177210903e-11;     // Bohr radius, m
  double c0 = 299792458.0;           // speed of light, m/s
  double hbar = 1.054571817e-34;     // J s
  double e_charge = 1.602176634e-19; // C
  double m_e = 9.1093837015e-31;     // kg
  double m_p = 1.67262192369e-27;    // kg

  double hartree_J() const { return hbar * hbar / (m_e * a0 * a0); }
  // atomic unit of electric field, V/m
  double efield_au_SI() const { return hartree_J() / (e_charge * a0); }
  // atomic unit of magnetic field in the SI-based convention hbar/(e a0^2), T
  double bfield_au_SI() const { return hbar / (e_charge * a0 * a0); }
  // atomic unit of momentum hbar/a0, kg m/s
  double momentum_au_SI() const { return hbar / a0; }
  // atomic unit of time hbar/E_h, s
  double time_au_SI() const { return hbar / hartree_J(); }

  /// Internal-consistency check: a0 = hbar/(alpha m_e c0).
  bool consistent(double rel_tol = 1e-9) const {
    const double a0_derived = hbar / (alpha * m_e * c0);
    return std::abs(a0_derived - a0) <= rel_tol * a0;
  }
};

inline const PhysicalConstants& constants() {
  static const PhysicalConstants c{};
  return c;
}

/// Two-body masses for the core + single-electron system.
/// m1 is the core, m2 the outer electron; m1 > m2 is assumed throughout.
struct AtomSpec {
  double m1; // kg
  double m2; // kg

  double total_mass() const { return m1 + m2; }
  double reduced_mass() const { return m1 * m2 / (m1 + m2); }
  double delta_m() const { return m1 - m2; }
  double mass_ratio() const { return m1 / m2; }

  void validate() const {
    if (!(m1 > m2) || !(m2 > 0.0))
      throw std::domain_error("AtomSpec requires m1 > m2 > 0");
  }

  static AtomSpec hydrogen() {
    const auto& c = constants();
    return AtomSpec{c.m_p, c.m_e};
  }
};

// Field conversions, SI <-> atomic units.
inline double efield_si_to_au(double E_V_per_m) {
  return E_V_per_m / constants().efield_au_SI();
}
inline double bfield_si_to_au(double B_T) {
  return B_T / constants().bfield_au_SI();
}
inline double momentum_au_to_si(double p_au) {
  return p_au * constants().momentum_au_SI();
}

} // namespace rydqed
