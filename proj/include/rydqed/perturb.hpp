#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rydqed/basis.hpp"
#include "rydqed/constants.hpp"

namespace rydqed {

/// External fields in the fixed geometry E0 along z, B0 along x.
/// Stored in SI; atomic-unit mirrors via the accessors.
struct FieldConfiguration {
  double E0_V_per_m = 100.0;
  double B0_T = 1e-5;

  double E0_au() const { return efield_si_to_au(E0_V_per_m); }
  double B0_au() const { return bfield_si_to_au(B0_T); }

  /// Zeeman/Stark dominance margin for level n: the Zeeman splitting must
  /// stay well below the linear Stark splitting. Margin > 1 is required,
  /// > 10 comfortable.
  double zeeman_weak_margin(int n) const {
    if (B0_au() == 0.0) return std::numeric_limits<double>::infinity();
    return n * E0_au() / B0_au();
  }
  bool zeeman_weak(int n) const { return zeeman_weak_margin(n) > 1.0; }
};

/// Stark energy coefficients of one parabolic level:
/// E(E0) = E(0) + e1 E0 + e2 E0^2 + e3 E0^3 (atomic units).
struct StarkEnergy {
  ParabolicLabel label;
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  bool converged = true;
  double achieved_rel = 0.0;
  int cutoff_used = 0;
};

struct PerturbDiagnostics {
  int basis_n_min = 0;
  int basis_n_max = 0;
  int out_states = 0;
  bool converged = true;
  double achieved_rel = 0.0;
  std::vector<std::string> skipped_pairs;
};

struct PerturbedState {
  ParabolicLabel base;
  int order = 1;
  StateVector vector; // full expansion including the base term
  FieldConfiguration field;
  PerturbDiagnostics diag;
};

/// Linear Stark shift (3/2) n (n1 - n2) E0, atomic units in and out.
double stark_shift_order1(const ParabolicLabel& p, double E0_au);

/// Closed-form second/third-order coefficients (exact, all intermediate
/// states included); used to cross-validate the discrete sums.
double stark_e2_closed(const ParabolicLabel& p);
double stark_e3_closed(const ParabolicLabel& p);

/// Discrete-spectrum e2, e3 by second/third-order sums outside the
/// manifold, converged under cutoff doubling to `rel_tol`.
StarkEnergy stark_shift_high_orders(const ParabolicLabel& p, int basis_cutoff,
                                    double rel_tol = 1e-6);

/// Stark-perturbed state at the given order (1 or 2). E0 in V/m.
PerturbedState stark_state(const ParabolicLabel& p, double E0_V_per_m,
                           int order, int basis_cutoff);

/// Zeeman admixture on top of a Stark-perturbed circular state.
/// In-manifold denominators carry the Stark splitting; pairs with equal
/// first-order shifts are excluded (and recorded).
PerturbedState zeeman_state(const PerturbedState& stark, double B0_T,
                            int basis_cutoff);

// ---------------------------------------------------------------------------
/// Degenerate Rayleigh-Schrodinger machinery for one (n, m) block:
/// the manifold states of level n at fixed magnetic quantum number m plus
/// all discrete states with n' in [n_min, n_max] and l within a halo of the
/// manifold's l-range. The Stark operator conserves m, so blocks decouple.
///
/// All stored quantities are reduced (per power of E0 in atomic units);
/// field strengths enter only when expansions are assembled.
class StarkBlock {
public:
  StarkBlock(int n, int m, int n_min, int n_max, int l_halo = 2);
  ~StarkBlock();
  StarkBlock(StarkBlock&&) noexcept;

  struct Expansion {
    StateVector psi0;
    StateVector psi1; // coefficient of E0^1
    StateVector psi2; // coefficient of E0^2
    double e1 = 0.0;  // per E0
    double e2 = 0.0;  // per E0^2
    double e3 = 0.0;  // per E0^3
    double norm1_sq = 0.0; // |psi1|^2 (per E0^2)
    std::vector<std::string> skipped_pairs;
  };
  /// Reduced expansion of the manifold state `p` to the given order (1, 2).
  const Expansion& expand(const ParabolicLabel& p, int order) const;

  /// Assembled state at field strength E0 (atomic units), intermediate
  /// normalization (base coefficient 1).
  StateVector assemble(const ParabolicLabel& p, double E0_au, int order) const;

  struct ExactState {
    StateVector vec;
    double energy = 0.0;
    double overlap_with_unperturbed = 0.0;
  };
  /// Finite-field diagonalization in the block basis; the returned state is
  /// the eigenvector adiabatically connected to `p` (max overlap, phase
  /// fixed positive).
  ExactState exact_state(const ParabolicLabel& p, double E0_au) const;

  int n() const;
  int m() const;
  int n_max() const;
  const std::vector<ParabolicLabel>& manifold() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace rydqed
