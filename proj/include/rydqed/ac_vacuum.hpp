#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rydqed/basis.hpp"
#include "rydqed/constants.hpp"
#include "rydqed/vec3.hpp"

namespace rydqed {

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::optional<double> cutoff_used;
  bool flagged = false;
};

/// Superposition of parabolic states within one manifold at time t.
struct SuperpositionState {
  struct Component {
    ParabolicLabel label;
    std::complex<double> beta;
  };
  std::vector<Component> components;
  int n = 0;
  double time_s = 0.0;

  double norm_sq() const;
};

struct ACResult {
  double p_long_amplitude = 0.0;       // kg m/s, bare closed form
  double p_long_amplitude_renorm = 0.0; // kg m/s, with the mass-renorm log
  double stark_omega = 0.0;            // rad/s
  double displacement = 0.0;           // m, closed-form route
  double displacement_from_momentum = 0.0; // m, p/(M omega) route
  double force = 0.0;                  // N, omega x bare amplitude
  double force_renorm = 0.0;           // N, omega x renormalized amplitude
  double renorm_log_factor = 0.0;      // (mu/m_e) log(m1/m2)
  bool relativistic_quarter_applied = true;
};

/// delta_m1/m1 - delta_m2/m2 by quadrature; equals -(8 alpha/3 pi) log(m1/m2).
IntegralResult renorm_combination(double m1_kg, double m2_kg);

/// Mass-renormalization integral delta_m at a finite wave-number cutoff
/// (1/m). Grows logarithmically with the cutoff.
IntegralResult delta_m(double mass_kg, double k_cutoff_inv_m);

struct RatioResult {
  double ratio = 0.25;
  double abs_error = 0.0;
  bool degenerate_input = false;
  bool flagged = false;
};

/// Relativistic/non-relativistic k-integral ratio; 1/4 for any mass pair.
RatioResult relativistic_ratio(double m1_kg, double m2_kg);

/// omega_n = (3/2) n e a0 E0 / hbar, rad/s; E0 in V/m.
double stark_frequency(int n, double E0_V_per_m);

/// Equal superposition of (0,0,n-1) and (1,0,n-2) with the Stark phase
/// e^{-i omega_n t} on the second component.
SuperpositionState nR_state(int n, double t_s, double E0_V_per_m);

struct AngularMomentumT {
  Vec3 closed;  // hbar units
  Vec3 direct;  // hbar units, via the spherical expansion and L operators
};

/// <L(t)> for the nR superposition; both routes, hard error on mismatch.
AngularMomentumT angular_momentum_t(int n, double t_s, double E0_V_per_m);

/// Relative residual of d<L>/dt = <d> x E0, finite differences with
/// step-size extrapolation.
double torque_residual(int n, double E0_V_per_m, double t_s);

/// Vacuum longitudinal momentum of the nR state at time t, SI.
/// -(8 alpha / 3 pi) log(m1/m2) <p(t)>, times 1/4 when apply_quarter.
Vec3 ac_momentum(int n, double E0_V_per_m, double t_s,
                 bool apply_quarter = true,
                 const AtomSpec& atom = AtomSpec::hydrogen(),
                 int basis_cutoff = 0);

/// Closed-form amplitude, frequency, displacement and force scales.
ACResult ac_amplitude(int n, double E0_V_per_m,
                      const AtomSpec& atom = AtomSpec::hydrogen(),
                      bool apply_quarter = true);

enum class TripleMomentumVariant {
  magnitude_squared_times_p, // |p|^2 p
  contracted_tensor,         // k-tensor contraction; 2/15 x |p|^2 p
};

struct TransverseResult {
  Vec3 value_si;
  double ratio_to_long = 0.0;
  bool within_band = true; // [alpha^2/30, 30 alpha^2]
  bool converged = true;
};

/// Transverse vacuum-momentum estimate for the nR state.
TransverseResult transverse_estimate(
    int n, double E0_V_per_m, double t_s,
    TripleMomentumVariant variant =
        TripleMomentumVariant::magnitude_squared_times_p,
    bool apply_quarter = true,
    const AtomSpec& atom = AtomSpec::hydrogen(), int basis_cutoff = 0);

} // namespace rydqed
