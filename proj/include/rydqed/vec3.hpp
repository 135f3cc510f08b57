#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace rydqed {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  static Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
  }
  static double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Complex Cartesian triple for matrix elements of vector operators.
struct CVec3 {
  std::complex<double> x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3& operator+=(const CVec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  CVec3 operator*(const std::complex<double>& s) const {
    return {x * s, y * s, z * s};
  }
  CVec3 conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
  double max_abs() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
  }
  /// Real part as a Vec3 (expectation values of Hermitian operators).
  Vec3 real() const { return {x.real(), y.real(), z.real()}; }
  double max_imag() const {
    return std::max({std::abs(x.imag()), std::abs(y.imag()),
                     std::abs(z.imag())});
  }
};

inline CVec3 operator*(const std::complex<double>& s, const CVec3& v) {
  return v * s;
}

/// Assemble Cartesian components from spherical ones (q = -1, 0, +1):
///   V_x = (V_{-1} - V_{+1})/sqrt(2), V_y = i (V_{-1} + V_{+1})/sqrt(2),
///   V_z = V_0.
inline CVec3 cartesian_from_spherical(const std::complex<double>& v_m1,
                                      const std::complex<double>& v_0,
                                      const std::complex<double>& v_p1) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> i_unit{0.0, 1.0};
  return {(v_m1 - v_p1) * inv_sqrt2, i_unit * (v_m1 + v_p1) * inv_sqrt2, v_0};
}

} // namespace rydqed
