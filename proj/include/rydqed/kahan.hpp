#pragma once

#include <complex>

namespace rydqed {

/// Kahan compensated accumulator. Used in the long state sums so that
/// evaluation order does not move results above the 1e-14 level.
template <class T>
class KahanSum {
public:
  void add(const T& v) {
    const T y = v - comp_;
    const T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  KahanSum& operator+=(const T& v) {
    add(v);
    return *this;
  }
  T value() const { return sum_; }

private:
  T sum_{};
  T comp_{};
};

using KahanReal = KahanSum<double>;
using KahanComplex = KahanSum<std::complex<double>>;

} // namespace rydqed
