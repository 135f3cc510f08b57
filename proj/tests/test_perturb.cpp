#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rydqed/constants.hpp"
#include "rydqed/operators.hpp"
#include "rydqed/perturb.hpp"

using namespace rydqed;

TEST_CASE("linear stark shifts") {
  CHECK(stark_shift_order1({0, 0, 4}, 1.0) == 0.0);
  CHECK(stark_shift_order1({1, 0, 48}, 1.0) == doctest::Approx(75.0));
  const double e0 = 3.7e-4;
  CHECK(stark_shift_order1({0, 1, 48}, e0) ==
        doctest::Approx(-1.5 * 50 * e0));
  // antisymmetry under n1 <-> n2
  CHECK(stark_shift_order1({2, 0, 1}, e0) ==
        doctest::Approx(-stark_shift_order1({0, 2, 1}, e0)));
}

TEST_CASE("field configuration dominance margin") {
  FieldConfiguration fc{100.0, 1e-5};
  CHECK(fc.zeeman_weak_margin(10) > 10.0);
  CHECK(fc.zeeman_weak(10));
  FieldConfiguration strong_b{1e-3, 1.0};
  CHECK(!strong_b.zeeman_weak(10));
}

TEST_CASE("high-order stark coefficients vs closed forms") {
  // the discrete-spectrum sums undershoot the exact coefficients by the
  // continuum contribution; for low states the deficit is substantial for
  // e2 of the ground state, small for high-l manifold states
  SUBCASE("ground state e2 vs polarizability") {
    const auto se = stark_shift_high_orders({0, 0, 0}, 12);
    CHECK(se.converged);
    // e2 = -alpha_zz/2 with discrete-only alpha_zz < 4.5
    CHECK(se.e2 < 0.0);
    CHECK(-2.0 * se.e2 < 4.5);
    CHECK(-2.0 * se.e2 > 3.0);
    CHECK(se.e1 == 0.0);
  }
  SUBCASE("e3 vanishes for symmetric states") {
    for (const auto& p : {ParabolicLabel{0, 0, 0}, ParabolicLabel{0, 0, 1},
                          ParabolicLabel{1, 1, 0}}) {
      const auto se = stark_shift_high_orders(p, p.n() + 10);
      CHECK(std::abs(se.e3) <
            1e-8 * std::max(1.0, std::abs(stark_e3_closed(
                                     ParabolicLabel{p.n() - 1, 0, 0}))));
    }
  }
  SUBCASE("near-circular states approach the closed forms") {
    // continuum contributions are small for high-l states
    for (const auto& p : {ParabolicLabel{1, 0, 8}, ParabolicLabel{0, 1, 10}}) {
      const auto se = stark_shift_high_orders(p, p.n() + 12);
      CHECK(se.converged);
      CHECK(se.e2 == doctest::Approx(stark_e2_closed(p)).epsilon(0.02));
      CHECK(se.e3 == doctest::Approx(stark_e3_closed(p)).epsilon(0.05));
    }
  }
  SUBCASE("e1 consistency with the first-order routine") {
    const ParabolicLabel p{2, 1, 1};
    const auto se = stark_shift_high_orders(p, p.n() + 10);
    CHECK(se.e1 == doctest::Approx(stark_shift_order1(p, 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("stark state structure and linearity") {
  const int n = 6;
  const double E0 = 2000.0; // V/m
  const auto ps = stark_state({0, 0, n - 1}, E0, 1, n + 12);
  // circular base: all admixtures share m = n-1
  for (const auto& t : ps.vector.terms) CHECK(t.label.m == n - 1);
  // exclusion: no correction term duplicates the base label
  int base_seen = 0;
  for (const auto& t : ps.vector.terms)
    if (t.label == circular_state(n)) ++base_seen;
  CHECK(base_seen == 1);

  // admixture coefficients strictly linear in E0
  const auto half = stark_state({0, 0, n - 1}, E0 / 2, 1, n + 12);
  for (const auto& t : ps.vector.terms) {
    if (t.label == circular_state(n)) continue;
    for (const auto& u : half.vector.terms)
      if (u.label == t.label)
        CHECK(t.coeff.real() / u.coeff.real() ==
              doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("stark expansion small parameter at n = 50") {
  // admixture amplitude over the circular state ~ 0.06 at 100 V/m
  const auto ps = stark_state({0, 0, 49}, 100.0, 1, 65);
  double max_adm = 0.0;
  for (const auto& t : ps.vector.terms)
    if (!(t.label == circular_state(50)))
      max_adm = std::max(max_adm, std::abs(t.coeff));
  CHECK(max_adm > 0.01);
  CHECK(max_adm < 0.12);
}

TEST_CASE("perturbative states vs finite-field diagonalization") {
  // overlap deficit below 1e-4 at small fields for n <= 8 manifolds
  for (int n : {4, 6, 8}) {
    StarkBlock block(n, n - 2, 1, n + 10, 3);
    const double e0 = 2e-6 / (n * n * n * n * n); // weak vs 1/n^5 scale
    for (const auto& p : block.manifold()) {
      const auto pert = block.assemble(p, e0, 2);
      const auto exact = block.exact_state(p, e0);
      // normalized overlap
      std::complex<double> ov = 0.0;
      for (const auto& ta : pert.terms)
        for (const auto& tb : exact.vec.terms)
          if (ta.label == tb.label)
            ov += std::conj(ta.coeff) * tb.coeff;
      const double deficit =
          1.0 - std::abs(ov) / std::sqrt(pert.norm_sq());
      CHECK(deficit < 1e-4);
      CHECK(deficit >= 0.0);
    }
  }
}

TEST_CASE("perturbative energies match finite-field eigenvalues to O(E0^3)") {
  for (int n : {3, 5, 6}) {
    StarkBlock block(n, std::max(0, n - 3), 1, n + 12, 3);
    for (const auto& p : block.manifold()) {
      const auto& ex = block.expand(p, 2);
      for (const double e0 : {1e-7, 2e-7}) {
        const auto exact = block.exact_state(p, e0);
        const double e_pert = energy_au(n) + ex.e1 * e0 + ex.e2 * e0 * e0 +
                              ex.e3 * e0 * e0 * e0;
        // residual dominated by the fourth order
        CHECK(std::abs(exact.energy - e_pert) < 1e3 * std::pow(n, 11) *
                                                     e0 * e0 * e0 * e0);
      }
    }
  }
}

TEST_CASE("zeeman admixture on the stark circular state") {
  const int n = 8;
  const double E0 = 500.0;
  const auto st = stark_state({0, 0, n - 1}, E0, 1, n + 12);

  SUBCASE("B0 = 0 is the identity") {
    const auto z = zeeman_state(st, 0.0, n + 12);
    CHECK(z.vector.terms.size() == st.vector.terms.size());
  }

  SUBCASE("admixtures are linear in B0 and change m by one") {
    const double B0 = 1e-7;
    const auto z1 = zeeman_state(st, B0, n + 12);
    const auto z2 = zeeman_state(st, 2.0 * B0, n + 12);
    bool saw_new_m = false;
    for (const auto& t : z1.vector.terms) {
      CHECK(std::abs(t.label.m - (n - 1)) <= 1);
      if (t.label.m != n - 1) {
        saw_new_m = true;
        for (const auto& u : z2.vector.terms)
          if (u.label == t.label) {
            const double ratio =
                std::abs(u.coeff) / std::max(std::abs(t.coeff), 1e-300);
            CHECK(ratio == doctest::Approx(2.0).epsilon(1e-8));
          }
      }
    }
    CHECK(saw_new_m);
  }

  SUBCASE("zeeman coupling out of the manifold vanishes without the field") {
    const auto bare = stark_state({0, 0, n - 1}, 0.0, 1, n + 12);
    const auto z = zeeman_state(bare, 1e-7, n + 12);
    // only the in-manifold admixture (m = n-2 within level n) survives
    for (const auto& t : z.vector.terms) CHECK(t.label.n == n);
  }

  SUBCASE("weakness violation is rejected") {
    CHECK_THROWS_AS(zeeman_state(st, 0.5, n + 12), std::domain_error);
  }
}

TEST_CASE("second-order in-manifold coefficients validated against exact states") {
  // the degenerate-theory second-order in-manifold mixing must reproduce the
  // finite-field eigenvector components at O(E0^2)
  const int n = 5, m = 1;
  StarkBlock block(n, m, 1, n + 14, 3);
  const ParabolicLabel p = block.manifold().front();
  const auto& ex = block.expand(p, 2);
  const double e0 = 5e-7;
  const auto exact = block.exact_state(p, e0);
  const auto pert = block.assemble(p, e0, 2);
  // compare coefficients on the manifold partner labels
  double worst = 0.0;
  for (const auto& q : block.manifold()) {
    if (q == p) continue;
    const auto qv = parabolic_to_spherical(q);
    std::complex<double> c_exact = 0.0, c_pert = 0.0;
    for (const auto& tq : qv.terms)
      for (const auto& te : exact.vec.terms)
        if (tq.label == te.label) c_exact += std::conj(tq.coeff) * te.coeff;
    for (const auto& tq : qv.terms)
      for (const auto& tp : pert.terms)
        if (tq.label == tp.label) c_pert += std::conj(tq.coeff) * tp.coeff;
    // normalize the exact vector to intermediate normalization
    std::complex<double> c_base = 0.0;
    const auto pv = parabolic_to_spherical(p);
    for (const auto& tq : pv.terms)
      for (const auto& te : exact.vec.terms)
        if (tq.label == te.label) c_base += std::conj(tq.coeff) * te.coeff;
    c_exact /= c_base;
    worst = std::max(worst,
                     std::abs(c_exact - c_pert) /
                         std::max(std::abs(c_exact), 1e-12));
  }
  // residual is O(E0^3) in the coefficients; generous bound
  CHECK(worst < 2e-2);
}
