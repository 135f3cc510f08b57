#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's evaluation paths: coupled states are built by explicit lowering
// from the stretched state, integrals by generic adaptive quadrature on
// directly-evaluated wavefunctions.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracles {

// --- Clebsch-Gordan via ladder construction -------------------------------
//
// Basis |m1, m2> with m = m1 + m2. |J, J> is built orthogonal to all
// |J', J> with J' > J (phase fixed by <j1, j1; j2, J-j1 | J, J> > 0),
// then J- is applied repeatedly. Everything in doubled units.

class LadderCG {
public:
  LadderCG(int dj1, int dj2) : dj1_(dj1), dj2_(dj2) {
    build();
  }

  double coeff(int dm1, int dm2, int dJ, int dM) const {
    if (dm1 + dm2 != dM) return 0.0;
    auto it = table_.find({dJ, dM});
    if (it == table_.end()) return 0.0;
    const auto& vec = it->second;
    const auto& m1s = basis_m1_.at(dM);
    for (std::size_t i = 0; i < vec.size(); ++i)
      if (m1s.at(i) == dm1) return vec[i];
    return 0.0;
  }

private:
  int dj1_, dj2_;
  // for each dM: list of dm1 values (dm2 = dM - dm1)
  std::map<int, std::vector<int>> basis_m1_;
  std::map<std::pair<int, int>, std::vector<double>> table_;

  static double lower_factor(int dj, int dm) {
    // <j, m-1| J- |j, m> = sqrt(j(j+1) - m(m-1)) in doubled units
    const double j = 0.5 * dj, m = 0.5 * dm;
    return std::sqrt(j * (j + 1.0) - m * (m - 1.0));
  }

  void build() {
    for (int dM = -(dj1_ + dj2_); dM <= dj1_ + dj2_; dM += 2) {
      std::vector<int> m1s;
      for (int dm1 = -dj1_; dm1 <= dj1_; dm1 += 2) {
        const int dm2 = dM - dm1;
        if (std::abs(dm2) <= dj2_) m1s.push_back(dm1);
      }
      basis_m1_[dM] = m1s;
    }
    for (int dJ = dj1_ + dj2_; dJ >= std::abs(dj1_ - dj2_); dJ -= 2) {
      // top state |J, J>: orthogonal to all higher |J', J>
      const auto& m1s = basis_m1_[dJ];
      std::vector<double> top(m1s.size(), 0.0);
      if (dJ == dj1_ + dj2_) {
        top[0] = 1.0; // only |j1, j2> contributes
      } else {
        // random-free construction: start from a unit vector and project out
        std::vector<std::vector<double>> higher;
        for (int dJp = dj1_ + dj2_; dJp > dJ; dJp -= 2)
          higher.push_back(table_.at({dJp, dJ}));
        for (std::size_t seed = 0; seed < m1s.size(); ++seed) {
          std::vector<double> v(m1s.size(), 0.0);
          v[seed] = 1.0;
          for (const auto& h : higher) {
            double dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * h[i];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * h[i];
          }
          double nrm = 0.0;
          for (double x : v) nrm += x * x;
          if (nrm > 1e-12) {
            for (double& x : v) x /= std::sqrt(nrm);
            top = v;
            break;
          }
        }
        // Condon-Shortley anchor: coefficient at maximal dm1 positive
        int best = 0;
        for (std::size_t i = 0; i < m1s.size(); ++i)
          if (m1s[i] > m1s[best]) best = static_cast<int>(i);
        if (top[best] < 0.0)
          for (double& x : top) x = -x;
      }
      table_[{dJ, dJ}] = top;

      // lower all the way down
      for (int dM = dJ; dM > -dJ; dM -= 2) {
        const auto& cur = table_.at({dJ, dM});
        const auto& m1s_cur = basis_m1_[dM];
        const auto& m1s_lo = basis_m1_[dM - 2];
        std::vector<double> lo(m1s_lo.size(), 0.0);
        const double denom = lower_factor(dJ, dM);
        for (std::size_t i = 0; i < m1s_cur.size(); ++i) {
          const int dm1 = m1s_cur[i];
          const int dm2 = dM - dm1;
          // J- = J1- + J2-
          if (dm1 - 2 >= -dj1_) {
            const double f = lower_factor(dj1_, dm1);
            for (std::size_t k = 0; k < m1s_lo.size(); ++k)
              if (m1s_lo[k] == dm1 - 2) lo[k] += f * cur[i] / denom;
          }
          if (dm2 - 2 >= -dj2_) {
            const double f = lower_factor(dj2_, dm2);
            for (std::size_t k = 0; k < m1s_lo.size(); ++k)
              if (m1s_lo[k] == dm1) lo[k] += f * cur[i] / denom;
          }
        }
        table_[{dJ, dM - 2}] = lo;
      }
    }
  }
};

inline double ladder_cg(double j1, double m1, double j2, double m2, double J,
                        double M) {
  const int dj1 = static_cast<int>(std::lround(2 * j1));
  const int dj2 = static_cast<int>(std::lround(2 * j2));
  LadderCG lad(dj1, dj2);
  return lad.coeff(static_cast<int>(std::lround(2 * m1)),
                   static_cast<int>(std::lround(2 * m2)),
                   static_cast<int>(std::lround(2 * J)),
                   static_cast<int>(std::lround(2 * M)));
}

// --- adaptive quadrature ----------------------------------------------------

/// Adaptive Simpson on [a, b]; the interval is pre-split into panels so
/// narrow peaks cannot hide between the first samples.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-12,
                               int depth = 18, int panels = 96) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb, double whole,
                      double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  // first pass: coarse panel estimates set the magnitude scale
  const double h = (b - a) / panels;
  std::vector<double> fa(panels), fb(panels), fm(panels), whole(panels);
  double scale = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h, x1 = x0 + h;
    fa[i] = f(x0);
    fb[i] = f(x1);
    fm[i] = f(0.5 * (x0 + x1));
    whole[i] = h / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
    scale += std::abs(whole[i]);
  }
  double total = 0.0;
  const double panel_tol =
      std::max(tol / panels, 1e-16 * std::max(scale, 1e-30));
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h, x1 = x0 + h;
    total += Rec::run(f, x0, x1, fa[i], fm[i], fb[i], whole[i], panel_tol,
                      depth);
  }
  return total;
}

/// Hydrogen radial function by direct series evaluation (small n only).
inline double hydrogen_radial(int n, int l, double r) {
  // R_nl = N (2r/n)^l e^{-r/n} L^{2l+1}_{n-l-1}(2r/n)
  const double x = 2.0 * r / n;
  double lag = 0.0;
  const int k = n - l - 1;
  double term = 1.0;
  // L^{(a)}_k(x) = sum_i (-1)^i C(k+a, k-i) x^i / i!
  for (int i = 0; i <= k; ++i) {
    double c = 1.0;
    for (int t = 1; t <= k - i; ++t)
      c *= (static_cast<double>(2 * l + 1 + i + t)) / t;
    lag += ((i % 2 == 0) ? 1.0 : -1.0) * c * term;
    term *= x / (i + 1.0);
  }
  double norm = std::exp(0.5 * (std::lgamma(n - l) - std::lgamma(n + l + 1.0)));
  norm *= 2.0 / (n * n);
  return norm * std::pow(x, l) * std::exp(-r / n) * lag;
}

} // namespace oracles
