#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rydqed/basis.hpp"
#include "rydqed/operators.hpp"

using namespace rydqed;

TEST_CASE("bound-state energies") {
  CHECK(energy_au(1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(energy_au(2) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(energy_au(50) == doctest::Approx(-2.0e-4).epsilon(1e-15));
  CHECK_THROWS_AS(energy_au(0), std::domain_error);
  for (int n = 1; n < 80; ++n) {
    CHECK(energy_au(n) < 0.0);
    CHECK(energy_au(n + 1) > energy_au(n));
  }
}

TEST_CASE("clebsch-gordan reference values") {
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 1, 1, 0, 2, 1) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  // selection rules
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 1) == 0.0);   // M != m1+m2
  CHECK(clebsch_gordan(1, 0, 1, 0, 3, 0) == 0.0);   // triangle violated
  CHECK_THROWS_AS(clebsch_gordan(0.7, 0, 1, 0, 1, 0), std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(1, 0.5, 1, 0, 1, 0.5), std::domain_error);
}

TEST_CASE("clebsch-gordan vs ladder oracle") {
  std::mt19937 rng(20240915u);
  for (int trial = 0; trial < 40; ++trial) {
    const int dj1 = 1 + static_cast<int>(rng() % 12); // up to j = 6
    const int dj2 = 1 + static_cast<int>(rng() % 12);
    oracles::LadderCG lad(dj1, dj2);
    for (int dJ = std::abs(dj1 - dj2); dJ <= dj1 + dj2; dJ += 2)
      for (int dM = -dJ; dM <= dJ; dM += 2)
        for (int dm1 = -dj1; dm1 <= dj1; dm1 += 2) {
          const int dm2 = dM - dm1;
          if (std::abs(dm2) > dj2) continue;
          const double ours = clebsch_gordan_2(dj1, dm1, dj2, dm2, dJ, dM);
          const double ref = lad.coeff(dm1, dm2, dJ, dM);
          CHECK(ours == doctest::Approx(ref).epsilon(1e-10));
        }
  }
}

TEST_CASE("subspace enumeration") {
  CHECK(subspace(1).size() == 1);
  CHECK(subspace(1)[0] == ParabolicLabel{0, 0, 0});
  CHECK(subspace(2).size() == 4);
  CHECK(subspace(50).size() == 2500);
  for (int n = 1; n <= 60; ++n) {
    const auto states = subspace(n);
    CHECK(states.size() == static_cast<std::size_t>(n) * n);
    for (const auto& p : states) CHECK(p.n() == n);
  }
}

TEST_CASE("circular state labels") {
  CHECK(circular_state(1) == SphericalLabel{1, 0, 0});
  CHECK(circular_state(3) == SphericalLabel{3, 2, 2});
  CHECK(circular_state(50) == SphericalLabel{50, 49, 49});
}

TEST_CASE("parabolic-to-spherical transform is orthogonal") {
  for (int n : {2, 5, 12, 30}) {
    const auto states = subspace(n);
    // U^T U = identity over the full manifold
    std::vector<StateVector> vecs;
    vecs.reserve(states.size());
    for (const auto& p : states) vecs.push_back(parabolic_to_spherical(p));
    double worst = 0.0;
    for (std::size_t a = 0; a < vecs.size(); ++a)
      for (std::size_t b = a; b < vecs.size(); ++b) {
        if (states[a].m != states[b].m) continue; // disjoint label support
        double dot = 0.0;
        for (const auto& ta : vecs[a].terms)
          for (const auto& tb : vecs[b].terms)
            if (ta.label == tb.label)
              dot += ta.coeff.real() * tb.coeff.real();
        const double expect = (a == b) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(dot - expect));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("circular coincidence with the (0,0,n-1) parabolic state") {
  for (int n = 1; n <= 60; ++n) {
    const auto v = parabolic_to_spherical({0, 0, n - 1});
    REQUIRE(v.terms.size() == 1);
    CHECK(v.terms[0].label == circular_state(n));
    CHECK(std::abs(v.terms[0].coeff) == doctest::Approx(1.0).epsilon(1e-12));
    // and the mirrored angular momentum
    const auto w = parabolic_to_spherical({0, 0, -(n - 1)});
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms[0].label == SphericalLabel{n, n - 1, -(n - 1)});
  }
}

TEST_CASE("transform orientation: diagonal z fixes the electric quantum number") {
  // <n1 n2 m| z |n1 n2 m> = (3/2) n (n1 - n2)
  for (const auto& p : {ParabolicLabel{1, 0, 0}, ParabolicLabel{0, 1, 0},
                        ParabolicLabel{2, 1, 1}, ParabolicLabel{0, 3, 2},
                        ParabolicLabel{4, 0, -2}}) {
    const auto v = parabolic_to_spherical(p);
    const auto z = dipole_z(v, v);
    CHECK(z.real() ==
          doctest::Approx(1.5 * p.n() * p.q()).epsilon(1e-11));
    CHECK(std::abs(z.imag()) < 1e-13);
  }
}

TEST_CASE("two-term example at n = 2") {
  const auto v = parabolic_to_spherical({1, 0, 0});
  REQUIRE(v.terms.size() == 2);
  CHECK(v.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parabolic expansion matches manifold z diagonalization at n = 50") {
  // the z operator restricted to the (n = 50, m = 48) manifold block has
  // the two parabolic states as eigenvectors
  const int n = 50, m = 48;
  const SphericalLabel a{n, n - 2, m}, b{n, n - 1, m};
  const double t = dipole_z(a, b);
  // 2x2 symmetric with zero diagonal: eigenvectors (1, +-1)/sqrt(2),
  // eigenvalues +-t
  const auto plus = parabolic_to_spherical({1, 0, m});
  REQUIRE(plus.terms.size() == 2);
  double ca = 0.0, cb = 0.0;
  for (const auto& term : plus.terms) {
    if (term.label == a) ca = term.coeff.real();
    if (term.label == b) cb = term.coeff.real();
  }
  CHECK(std::abs(ca) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(cb) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  // eigenvalue consistency: <plus| z |plus> = ca cb t * 2 = (3/2) n
  CHECK(2.0 * ca * cb * t == doctest::Approx(1.5 * n).epsilon(1e-11));
}

TEST_CASE("label json forms") {
  CHECK(to_json(SphericalLabel{3, 2, -1}) == "{\"n\":3,\"l\":2,\"m\":-1}");
  CHECK(to_json(ParabolicLabel{1, 0, 2}) == "{\"n1\":1,\"n2\":0,\"m\":2}");
}
