#include "rydqed/perturb.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "rydqed/kahan.hpp"
#include "rydqed/operators.hpp"

namespace rydqed {

double stark_shift_order1(const ParabolicLabel& p, double E0_au) {
  p.require_valid();
  return 1.5 * p.n() * p.q() * E0_au;
}

double stark_e2_closed(const ParabolicLabel& p) {
  const double n = p.n(), q = p.q(), m = p.m;
  return -(1.0 / 16.0) * std::pow(n, 4) *
         (17.0 * n * n - 3.0 * q * q - 9.0 * m * m + 19.0);
}

double stark_e3_closed(const ParabolicLabel& p) {
  const double n = p.n(), q = p.q(), m = p.m;
  return (3.0 / 32.0) * std::pow(n, 7) * q *
         (23.0 * n * n - q * q + 11.0 * m * m + 39.0);
}

// ---------------------------------------------------------------------------

struct StarkBlock::Impl {
  int n;
  int m;
  int n_min;
  int n_max;

  std::vector<ParabolicLabel> manifold;
  std::vector<StateVector> manifold_vec;
  std::vector<double> e1; // per E0

  std::vector<SphericalLabel> out;
  Eigen::MatrixXd z_mo; // manifold x out
  Eigen::MatrixXd z_oo; // out x out
  Eigen::VectorXd inv_de; // 1/(E0_manifold - E0_k) per out state

  mutable std::mutex mtx;
  mutable std::map<std::pair<std::pair<int, int>, int>, Expansion> cache;

  int index_of(const ParabolicLabel& p) const {
    for (std::size_t i = 0; i < manifold.size(); ++i)
      if (manifold[i] == p) return static_cast<int>(i);
    throw std::domain_error("StarkBlock: label not in this (n, m) manifold");
  }
};

StarkBlock::StarkBlock(int n, int m, int n_min, int n_max, int l_halo)
    : impl_(std::make_unique<Impl>()) {
  if (n < 1 || std::abs(m) > n - 1)
    throw std::domain_error("StarkBlock: bad (n, m)");
  if (n_max < n + 1) throw std::domain_error("StarkBlock: cutoff too small");
  impl_->n = n;
  impl_->m = m;
  impl_->n_min = std::max(1, n_min);
  impl_->n_max = n_max;

  int l_lo = n - 1, l_hi = std::abs(m);
  for (int n1 = 0; n1 + std::abs(m) <= n - 1; ++n1) {
    const ParabolicLabel p{n1, n - 1 - std::abs(m) - n1, m};
    impl_->manifold.push_back(p);
    impl_->manifold_vec.push_back(parabolic_to_spherical(p));
    impl_->e1.push_back(1.5 * p.n() * p.q());
    for (const auto& t : impl_->manifold_vec.back().terms) {
      l_lo = std::min(l_lo, t.label.l);
      l_hi = std::max(l_hi, t.label.l);
    }
  }
  l_lo = std::max(std::abs(m), l_lo - l_halo);
  l_hi = l_hi + l_halo;

  for (int np = impl_->n_min; np <= n_max; ++np) {
    if (np == n) continue;
    for (int l = std::max(l_lo, std::abs(m)); l <= std::min(l_hi, np - 1); ++l)
      impl_->out.push_back({np, l, m});
  }

  const auto M = static_cast<Eigen::Index>(impl_->manifold.size());
  const auto K = static_cast<Eigen::Index>(impl_->out.size());
  impl_->z_mo.setZero(M, K);
  impl_->z_oo.setZero(K, K);
  impl_->inv_de.setZero(K);

  const double e_man = energy_au(n);
  for (Eigen::Index k = 0; k < K; ++k) {
    impl_->inv_de(k) = 1.0 / (e_man - energy_au(impl_->out[k].n));
    for (Eigen::Index i = 0; i < M; ++i) {
      KahanReal s;
      for (const auto& t : impl_->manifold_vec[i].terms)
        s += t.coeff.real() * dipole_z(impl_->out[k], t.label);
      impl_->z_mo(i, k) = s.value();
    }
    for (Eigen::Index kp = 0; kp <= k; ++kp) {
      const double v = dipole_z(impl_->out[k], impl_->out[kp]);
      impl_->z_oo(k, kp) = v;
      impl_->z_oo(kp, k) = v;
    }
  }
}

StarkBlock::~StarkBlock() = default;
StarkBlock::StarkBlock(StarkBlock&&) noexcept = default;

int StarkBlock::n() const { return impl_->n; }
int StarkBlock::m() const { return impl_->m; }
int StarkBlock::n_max() const { return impl_->n_max; }
const std::vector<ParabolicLabel>& StarkBlock::manifold() const {
  return impl_->manifold;
}

const StarkBlock::Expansion& StarkBlock::expand(const ParabolicLabel& p,
                                                int order) const {
  if (order < 1 || order > 2)
    throw std::domain_error("StarkBlock::expand: order must be 1 or 2");
  auto& im = *impl_;
  const int i = im.index_of(p);
  const std::pair<std::pair<int, int>, int> key{{i, 0}, order};
  {
    std::lock_guard lock(im.mtx);
    auto it = im.cache.find(key);
    if (it != im.cache.end()) return it->second;
  }

  const auto K = static_cast<Eigen::Index>(im.out.size());
  const auto M = static_cast<Eigen::Index>(im.manifold.size());

  Expansion ex;
  ex.e1 = im.e1[i];

  // First order: out-of-manifold admixtures.
  Eigen::VectorXd c1 = (im.z_mo.row(i).transpose().array() *
                        im.inv_de.array()).matrix();
  // In-manifold first-order coefficients from the second-order coupling
  // W(l', l) = sum_k z_{l'k} z_{kl} / (E0 - E0_k).
  Eigen::VectorXd w = im.z_mo * c1; // W(:, i)
  ex.e2 = w(i);
  Eigen::VectorXd C1 = Eigen::VectorXd::Zero(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    if (j == i) continue;
    const double de1 = im.e1[i] - im.e1[j];
    if (std::abs(de1) < 1e-12) {
      if (std::abs(w(j)) > 1e-12)
        throw std::runtime_error(
            "StarkBlock: coupled degenerate pair with equal linear shifts");
      ex.skipped_pairs.push_back(to_json(im.manifold[i]) + "<->" +
                                 to_json(im.manifold[j]));
      continue;
    }
    C1(j) = w(j) / de1;
  }

  ex.norm1_sq = c1.squaredNorm() + C1.squaredNorm();

  auto to_state = [&](const Eigen::VectorXd& c_out,
                      const Eigen::VectorXd& c_man) {
    StateVector v;
    v.energy = energy_au(im.n);
    v.norm_tag = NormTag::first_order_truncated;
    for (Eigen::Index k = 0; k < K; ++k)
      if (c_out(k) != 0.0)
        v.terms.push_back({im.out[k], {c_out(k), 0.0}});
    for (Eigen::Index j = 0; j < M; ++j) {
      if (c_man(j) == 0.0) continue;
      for (const auto& t : im.manifold_vec[j].terms)
        v.terms.push_back({t.label, t.coeff * c_man(j)});
    }
    v.compress();
    return v;
  };

  ex.psi0 = im.manifold_vec[i];
  ex.psi1 = to_state(c1, C1);

  if (order >= 2) {
    // Second order, out of manifold:
    // c2_k = [ (z_oo c1)_k + (z_mo^T C1)_k - e1 c1_k ] / (E0 - E0_k)
    Eigen::VectorXd rhs = im.z_oo * c1 + im.z_mo.transpose() * C1 -
                          ex.e1 * c1;
    Eigen::VectorXd c2 = (rhs.array() * im.inv_de.array()).matrix();
    ex.e3 = im.z_mo.row(i) * c2;
    // Second order, in manifold:
    // C2_j = [ (z_mo c2)_j - e2 C1_j ] / (e1_i - e1_j)
    Eigen::VectorXd t = im.z_mo * c2;
    Eigen::VectorXd C2 = Eigen::VectorXd::Zero(M);
    for (Eigen::Index j = 0; j < M; ++j) {
      if (j == i) continue;
      const double de1 = im.e1[i] - im.e1[j];
      if (std::abs(de1) < 1e-12) continue;
      C2(j) = (t(j) - ex.e2 * C1(j)) / de1;
    }
    ex.psi2 = to_state(c2, C2);
  }

  std::lock_guard lock(im.mtx);
  return im.cache.emplace(key, std::move(ex)).first->second;
}

StateVector StarkBlock::assemble(const ParabolicLabel& p, double E0_au,
                                 int order) const {
  const Expansion& ex = expand(p, order);
  StateVector v = ex.psi0;
  v.norm_tag = NormTag::first_order_truncated;
  for (const auto& t : ex.psi1.terms)
    v.terms.push_back({t.label, t.coeff * E0_au});
  if (order >= 2)
    for (const auto& t : ex.psi2.terms)
      v.terms.push_back({t.label, t.coeff * E0_au * E0_au});
  v.compress();
  v.energy = energy_au(impl_->n) + ex.e1 * E0_au + ex.e2 * E0_au * E0_au;
  return v;
}

StarkBlock::ExactState StarkBlock::exact_state(const ParabolicLabel& p,
                                               double E0_au) const {
  auto& im = *impl_;
  const int i = im.index_of(p);
  const auto M = static_cast<Eigen::Index>(im.manifold.size());
  const auto K = static_cast<Eigen::Index>(im.out.size());
  const auto N = M + K;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index a = 0; a < M; ++a) {
    h(a, a) = energy_au(im.n) + im.e1[a] * E0_au;
    for (Eigen::Index k = 0; k < K; ++k) {
      h(a, M + k) = E0_au * im.z_mo(a, k);
      h(M + k, a) = h(a, M + k);
    }
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    h(M + k, M + k) = energy_au(im.out[k].n);
    for (Eigen::Index kp = 0; kp < K; ++kp)
      if (k != kp) h(M + k, M + kp) = E0_au * im.z_oo(k, kp);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  // adiabatic identification: maximal overlap with the unperturbed state
  Eigen::Index best = 0;
  double best_ov = -1.0;
  for (Eigen::Index c = 0; c < N; ++c) {
    const double ov = std::abs(solver.eigenvectors()(i, c));
    if (ov > best_ov) {
      best_ov = ov;
      best = c;
    }
  }
  Eigen::VectorXd vec = solver.eigenvectors().col(best);
  if (vec(i) < 0.0) vec = -vec;

  ExactState es;
  es.energy = solver.eigenvalues()(best);
  es.overlap_with_unperturbed = best_ov;
  es.vec.energy = es.energy;
  es.vec.norm_tag = NormTag::normalized;
  for (Eigen::Index a = 0; a < M; ++a) {
    if (vec(a) == 0.0) continue;
    for (const auto& t : im.manifold_vec[a].terms)
      es.vec.terms.push_back({t.label, t.coeff * vec(a)});
  }
  for (Eigen::Index k = 0; k < K; ++k)
    if (vec(M + k) != 0.0)
      es.vec.terms.push_back({im.out[k], {vec(M + k), 0.0}});
  es.vec.compress();
  return es;
}

// ---------------------------------------------------------------------------

namespace {

StarkEnergy high_orders_once(const ParabolicLabel& p, int n_lo, int n_hi) {
  StarkBlock block(p.n(), p.m, n_lo, n_hi);
  const auto& ex = block.expand(p, 2);
  StarkEnergy se;
  se.label = p;
  se.e1 = ex.e1;
  se.e2 = ex.e2;
  se.e3 = ex.e3;
  se.cutoff_used = n_hi;
  return se;
}

} // namespace

StarkEnergy stark_shift_high_orders(const ParabolicLabel& p, int basis_cutoff,
                                    double rel_tol) {
  p.require_valid();
  const int n = p.n();
  if (basis_cutoff < n + 10)
    throw std::domain_error("stark_shift_high_orders: cutoff must be >= n+10");

  int hi = basis_cutoff;
  StarkEnergy prev = high_orders_once(p, 1, hi);
  for (int iter = 0; iter < 5; ++iter) {
    const int hi2 = n + 2 * (hi - n);
    StarkEnergy next = high_orders_once(p, 1, hi2);
    const double d2 = std::abs(next.e2 - prev.e2) /
                      std::max(std::abs(next.e2), 1e-300);
    const double d3 = std::abs(next.e3 - prev.e3) /
                      std::max({std::abs(next.e3), std::abs(next.e2), 1e-300});
    next.achieved_rel = std::max(d2, d3);
    if (next.achieved_rel < rel_tol) {
      next.converged = true;
      return next;
    }
    prev = next;
    hi = hi2;
  }
  prev.converged = false;
  return prev;
}

PerturbedState stark_state(const ParabolicLabel& p, double E0_V_per_m,
                           int order, int basis_cutoff) {
  p.require_valid();
  if (order < 1 || order > 2)
    throw std::domain_error("stark_state: order must be 1 or 2");
  const int n = p.n();
  const int hi = std::max(basis_cutoff, n + 10);
  StarkBlock block(n, p.m, 1, hi);
  const double e0 = efield_si_to_au(E0_V_per_m);

  PerturbedState ps;
  ps.base = p;
  ps.order = order;
  ps.field.E0_V_per_m = E0_V_per_m;
  ps.field.B0_T = 0.0;
  ps.vector = block.assemble(p, e0, order);
  ps.diag.basis_n_min = 1;
  ps.diag.basis_n_max = hi;
  ps.diag.out_states = static_cast<int>(ps.vector.terms.size());
  ps.diag.skipped_pairs = block.expand(p, order).skipped_pairs;

  // convergence probe: first-order admixture norm under cutoff growth
  StarkBlock wide(n, p.m, 1, n + 2 * (hi - n));
  const double a = block.expand(p, 1).norm1_sq;
  const double b = wide.expand(p, 1).norm1_sq;
  ps.diag.achieved_rel = std::abs(a - b) / std::max(b, 1e-300);
  ps.diag.converged = ps.diag.achieved_rel < 1e-6;
  return ps;
}

PerturbedState zeeman_state(const PerturbedState& stark, double B0_T,
                            int basis_cutoff) {
  const ParabolicLabel base = stark.base;
  const int n = base.n();
  if (!(base.n1 == 0 && base.n2 == 0))
    throw std::domain_error("zeeman_state: base must be a circular state");
  const double e0 = stark.field.E0_au();
  const double b0 = bfield_si_to_au(B0_T);
  const int hi = std::max(basis_cutoff, n + 10);

  FieldConfiguration fc{stark.field.E0_V_per_m, B0_T};
  if (b0 != 0.0 && !fc.zeeman_weak(n))
    throw std::domain_error("zeeman_state: Zeeman term not weak vs Stark");

  PerturbedState out = stark;
  out.field = fc;
  if (b0 == 0.0 || n == 1) return out;

  const int m = base.m;
  const int sgn = m >= 0 ? 1 : -1;
  const SphericalLabel nc0 = {n, n - 1, m};
  // H_Z = (B0/2) L_x lowers |m| of the circular state by one:
  const SphericalLabel lowered{n, n - 1, m - sgn};

  StarkBlock block_c(n, m, 1, hi);
  StarkBlock block_j(n, m - sgn, 1, hi);
  const StateVector nc = block_c.assemble(base, e0, 1);

  // In-manifold sum: partners at m -+ 1 with their Stark splittings in the
  // denominator. Pairs with equal first-order shifts are excluded after
  // checking they are indeed uncoupled.
  for (const auto& pj : block_j.manifold()) {
    const StateVector jv = block_j.assemble(pj, e0, 1);
    const std::complex<double> hz = 0.5 * b0 * angular_momentum_x(jv, nc);
    const double de = -stark_shift_order1(pj, e0); // E1 of the base is 0
    if (std::abs(de) < 1e-12) {
      if (std::abs(hz) > 1e-14)
        throw std::runtime_error(
            "zeeman_state: vanishing Stark denominator with coupling");
      out.diag.skipped_pairs.push_back(to_json(base) + "<->" + to_json(pj));
      continue;
    }
    const std::complex<double> amp = hz / de;
    for (const auto& t : jv.terms)
      out.vector.terms.push_back({t.label, t.coeff * amp});
  }

  // Out-of-manifold sum: <k,E0|H_Z|nC,E0> is at least linear in E0; keep
  // the linear pieces with unperturbed energy denominators.
  const auto& ex_c = block_c.expand(base, 1);
  const double lad = angular_momentum_x(lowered, nc0);
  for (int np = 1; np <= hi; ++np) {
    if (np == n) continue;
    for (int dl = -2; dl <= 2; ++dl) {
      const int l = n - 1 + dl;
      for (int mm : {m - 1, m + 1}) {
        const SphericalLabel k{np, l, mm};
        if (!k.valid()) continue;
        KahanReal amp; // accumulated ladder x Stark pieces of <k,E0|Lx|nC,E0>
        for (const auto& t : ex_c.psi1.terms)
          amp += t.coeff.real() * angular_momentum_x(k, t.label) * e0;
        if (lad != 0.0 && k.m == lowered.m && std::abs(k.l - lowered.l) == 1)
          amp += e0 * dipole_z(lowered, k) /
                 (energy_au(np) - energy_au(n)) * lad;
        if (amp.value() == 0.0) continue;
        const double coeff =
            0.5 * b0 * amp.value() / (energy_au(n) - energy_au(np));
        out.vector.terms.push_back({k, {coeff, 0.0}});
      }
    }
  }
  out.vector.compress();
  out.diag.basis_n_max = hi;
  return out;
}

} // namespace rydqed
