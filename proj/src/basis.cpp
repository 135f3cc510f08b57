#include "rydqed/basis.hpp"

#include <algorithm>
#include <cmath>

#include "rydqed/kahan.hpp"

namespace rydqed {

double StateVector::norm_sq() const {
  KahanReal s;
  for (const auto& t : terms) s += std::norm(t.coeff);
  return s.value();
}

void StateVector::compress(double eps) {
  std::sort(terms.begin(), terms.end(),
            [](const StateTerm& a, const StateTerm& b) {
              return a.label < b.label;
            });
  std::vector<StateTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().label == t.label)
      out.back().coeff += t.coeff;
    else
      out.push_back(t);
  }
  std::erase_if(out, [eps](const StateTerm& t) {
    return std::abs(t.coeff) <= eps;
  });
  terms = std::move(out);
}

void StateVector::check_invariants(double tol) const {
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].label == terms[j].label)
        throw std::logic_error("StateVector has duplicate labels");
  if (norm_tag == NormTag::normalized &&
      std::abs(norm_sq() - 1.0) > tol)
    throw std::logic_error("StateVector tagged normalized but |c|^2 != 1");
}

double energy_au(int n) {
  if (n < 1) throw std::domain_error("energy_au: n must be >= 1");
  return -0.5 / (static_cast<double>(n) * n);
}

namespace {

double log_fact_half(int doubled) {
  // (doubled/2)! via lgamma; doubled must be even and non-negative.
  return std::lgamma(0.5 * doubled + 1.0);
}

} // namespace

double clebsch_gordan_2(int dj1, int dm1, int dj2, int dm2, int dJ, int dM) {
  if (dj1 < 0 || dj2 < 0 || dJ < 0)
    throw std::domain_error("clebsch_gordan: negative angular momentum");
  if ((dj1 + dm1) % 2 != 0 || (dj2 + dm2) % 2 != 0 || (dJ + dM) % 2 != 0)
    throw std::domain_error("clebsch_gordan: j and m of mixed character");
  if (std::abs(dm1) > dj1 || std::abs(dm2) > dj2 || std::abs(dM) > dJ)
    return 0.0;
  if (dm1 + dm2 != dM) return 0.0;
  if (dJ < std::abs(dj1 - dj2) || dJ > dj1 + dj2) return 0.0;
  if ((dj1 + dj2 + dJ) % 2 != 0) return 0.0;

  // Racah closed form, evaluated with log-factorials and sign tracking so
  // j ~ 30 stays finite.
  const double log_pre =
      0.5 * (std::log(dJ + 1.0) + log_fact_half(dj1 + dj2 - dJ) +
             log_fact_half(dj1 - dj2 + dJ) + log_fact_half(-dj1 + dj2 + dJ) -
             log_fact_half(dj1 + dj2 + dJ + 2) + log_fact_half(dJ + dM) +
             log_fact_half(dJ - dM) + log_fact_half(dj1 - dm1) +
             log_fact_half(dj1 + dm1) + log_fact_half(dj2 - dm2) +
             log_fact_half(dj2 + dm2));

  const int k_min =
      std::max({0, (dj2 - dJ - dm1) / 2, (dj1 - dJ + dm2) / 2});
  const int k_max = std::min({(dj1 + dj2 - dJ) / 2, (dj1 - dm1) / 2,
                              (dj2 + dm2) / 2});

  KahanSum<long double> sum;
  for (int k = k_min; k <= k_max; ++k) {
    const double log_den =
        log_fact_half(2 * k) + log_fact_half(dj1 + dj2 - dJ - 2 * k) +
        log_fact_half(dj1 - dm1 - 2 * k) + log_fact_half(dj2 + dm2 - 2 * k) +
        log_fact_half(dJ - dj2 + dm1 + 2 * k) +
        log_fact_half(dJ - dj1 - dm2 + 2 * k);
    const long double term = std::exp(static_cast<long double>(log_pre - log_den));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum.value());
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M) {
  auto dbl = [](double x) {
    const double d = 2.0 * x;
    const double r = std::round(d);
    if (std::abs(d - r) > 1e-9)
      throw std::domain_error("clebsch_gordan: argument not half-integer");
    return static_cast<int>(r);
  };
  return clebsch_gordan_2(dbl(j1), dbl(m1), dbl(j2), dbl(m2), dbl(J), dbl(M));
}

StateVector parabolic_to_spherical(const ParabolicLabel& p) {
  p.require_valid();
  const int n = p.n();
  const int m = p.m;
  // The manifold carries two spin-(n-1)/2 systems; orientation chosen so the
  // diagonal z matrix element is +(3/2) n (n1 - n2) with radial functions
  // positive at the origin.
  const int dj = n - 1;
  const int dm1 = m - p.n1 + p.n2;
  const int dm2 = m + p.n1 - p.n2;

  StateVector v;
  v.energy = energy_au(n);
  v.norm_tag = NormTag::normalized;
  for (int l = std::abs(m); l <= n - 1; ++l) {
    const double c = clebsch_gordan_2(dj, dm1, dj, dm2, 2 * l, 2 * m);
    if (c != 0.0)
      v.terms.push_back({SphericalLabel{n, l, m}, {c, 0.0}});
  }
  return v;
}

SphericalLabel circular_state(int n) {
  if (n < 1) throw std::domain_error("circular_state: n must be >= 1");
  return {n, n - 1, n - 1};
}

std::vector<ParabolicLabel> subspace(int n) {
  if (n < 1) throw std::domain_error("subspace: n must be >= 1");
  std::vector<ParabolicLabel> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int m = -(n - 1); m <= n - 1; ++m)
    for (int n1 = 0; n1 + std::abs(m) <= n - 1; ++n1)
      out.push_back({n1, n - 1 - std::abs(m) - n1, m});
  return out;
}

std::string to_json(const SphericalLabel& s) {
  return "{\"n\":" + std::to_string(s.n) + ",\"l\":" + std::to_string(s.l) +
         ",\"m\":" + std::to_string(s.m) + "}";
}

std::string to_json(const ParabolicLabel& p) {
  return "{\"n1\":" + std::to_string(p.n1) + ",\"n2\":" + std::to_string(p.n2) +
         ",\"m\":" + std::to_string(p.m) + "}";
}

} // namespace rydqed
