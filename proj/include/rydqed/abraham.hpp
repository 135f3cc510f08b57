#pragma once

#include <string>
#include <vector>

#include "rydqed/constants.hpp"
#include "rydqed/perturb.hpp"
#include "rydqed/vec3.hpp"

namespace rydqed {

enum class KappaChannel { k1a, k1b, k2 };
enum class SignVsPA { parallel, antiparallel };

std::string to_string(KappaChannel c);

struct KappaDiagnostics {
  int basis_cutoff = 0;
  bool converged = true;
  double cutoff_rel_change = 0.0;
  double e0_ratio_dev = 0.0; // |kappa(E0)/kappa(E0/2) - 1|
  double b0_ratio_dev = 0.0;
  double transverse_leak = 0.0; // off-y momentum relative to the y part
};

/// One dimensionless QED correction channel,
/// value = yhat . <P_long> / (alpha^2 |P_A|).
struct KappaResult {
  int n = 0;
  KappaChannel channel = KappaChannel::k2;
  double value = 0.0;
  SignVsPA sign_vs_PA = SignVsPA::parallel;
  KappaDiagnostics diag;
  // k1a term breakdown (same normalization as value):
  double term_second_order_wf = 0.0;
  double term_e2_diff = 0.0;
  double term_e3_diff = 0.0;
  double term_e2sq_diff = 0.0;
  double term_inverse_field = 0.0; // reported even when excluded
  bool include_inverse_E_term = false;
};

struct AbrahamMomentum {
  Vec3 vector_si;          // kg m/s
  Vec3 vector_au;          // hbar/a0
  double polarizability_used = 0.0; // a0^3
};

struct PolarizabilitySum {
  double value = 0.0; // a0^3
  bool converged = true;
  double achieved_rel = 0.0;
  int cutoff_used = 0;
};

/// Closed-form static dipole polarizability (1/8) n^4 (17 n^2 - 9 m^2 + 19).
double polarizability_closed(int n, int m);

/// Discrete-spectrum sum over states for the circular level.
PolarizabilitySum polarizability_sum(int n, int basis_cutoff,
                                     double rel_tol = 1e-6);

/// Classical field momentum alpha_zz E0 x B0 (closed-form polarizability).
AbrahamMomentum abraham_momentum(int n, const FieldConfiguration& fields);

/// Gauge-term channel: first-order Stark state and the unit position vector.
KappaResult kappa2(int n, double E0_V_per_m, int basis_cutoff);

/// Zeeman channel, sum over states outside the degenerate manifold.
KappaResult kappa1b(int n, double E0_V_per_m, double B0_T, int basis_cutoff);

/// Zeeman channel inside the manifold; four-term expansion in the Stark
/// splitting with second-order wavefunctions. The (1/E0) piece is off by
/// default and reported separately.
KappaResult kappa1a(int n, double E0_V_per_m, double B0_T, int basis_cutoff,
                    bool include_inverse_E_term = false);

/// Same with the circular state's angular momentum along +-z; the momentum
/// direction must be orientation-independent (time-reversal check).
KappaResult kappa1a_oriented(int n, double E0_V_per_m, double B0_T,
                             int basis_cutoff, bool include_inverse_E_term,
                             int m_sign);

/// Fitted reference curve for the in-manifold channel,
/// f(n) = 2.78 + 5.788e-2 (50/n)^2 - 1.05e-1 (50/n).
double kappa1a_reference_fit(int n);

} // namespace rydqed
