#pragma once

// Small fixed-size tensors over an arbitrary scalar type, and the scalar
// aliases used throughout the library.

#include <array>
#include <cmath>
#include <cstddef>

#include "charges/dual.hpp"
#include "charges/errors.hpp"

namespace charges {

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;
template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

// Jets over the 3-chart (r, theta, psi) or (x, y, z).
using Jet1 = Dual<double, 3>;
using Jet2 = Dual<Jet1, 3>;

// Extended-precision jets used inside the pullback; cast to Jet1/Jet2 on exit.
using WideReal = long double;
using WJet1 = Dual<WideReal, 3>;
using WJet2 = Dual<WJet1, 3>;

// Jets over the spacetime chart.
using D4 = Dual<double, 4>;
using D44 = Dual<D4, 4>;

template <class T, std::size_t N>
std::array<std::array<T, N>, N> zero_matrix() {
  std::array<std::array<T, N>, N> m;
  for (auto& row : m) row.fill(T(0.0));
  return m;
}

template <class T>
T det3(const Mat3<T>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class T>
Mat3<T> inverse3(const Mat3<T>& m) {
  const T det = det3(m);
  if (value_of(det) == 0) throw DegenerateError("singular 3x3 matrix");
  const T inv = T(1.0) / det;
  Mat3<T> r;
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv;
  return r;
}

/// Gauss-Jordan with partial pivoting on the innermost values. Lorentzian
/// metrics in null charts have vanishing diagonal entries, so pivoting is
/// required.
template <class T>
Mat4<T> inverse4(Mat4<T> a) {
  using std::abs;
  Mat4<T> inv = zero_matrix<T, 4>();
  for (int i = 0; i < 4; ++i) inv[i][i] = T(1.0);
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    auto best = abs(value_of(a[col][col]));
    for (int row = col + 1; row < 4; ++row) {
      const auto cand = abs(value_of(a[row][col]));
      if (cand > best) {
        best = cand;
        pivot = row;
      }
    }
    if (best == 0) throw DegenerateError("singular 4x4 metric");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const T scale = T(1.0) / a[col][col];
    for (int k = 0; k < 4; ++k) {
      a[col][k] = a[col][k] * scale;
      inv[col][k] = inv[col][k] * scale;
    }
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const T f = a[row][col];
      if (value_of(f) == 0 && !is_dual_v<T>) continue;
      for (int k = 0; k < 4; ++k) {
        a[row][k] = a[row][k] - f * a[col][k];
        inv[row][k] = inv[row][k] - f * inv[col][k];
      }
    }
  }
  return inv;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& m) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

template <class To, class From, std::size_t N>
std::array<std::array<To, N>, N> matrix_cast(const std::array<std::array<From, N>, N>& m) {
  std::array<std::array<To, N>, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = scalar_cast<base_scalar_t<To>>(m[i][j]);
  return r;
}

template <std::size_t N>
std::array<std::array<double, N>, N> values_of(const auto& m) {
  std::array<std::array<double, N>, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = static_cast<double>(value_of(m[i][j]));
  return r;
}

}  // namespace charges
