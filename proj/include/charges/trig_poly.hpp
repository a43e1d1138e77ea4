#pragma once

// Closed-form functions of (u, theta, psi):
//   sum_k coef_k * u^a_k * sin(theta)^b_k * cos(theta)^c_k * {cos|sin}(m_k psi)
// Closed under products and under d/du, d/dtheta, d/dpsi, so every derived
// Bondi quantity stays exact and can be evaluated with any dual scalar.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "charges/dual.hpp"

namespace charges {

enum class Harmonic { Cos, Sin };

struct TrigTerm {
  double coef = 0.0;
  int u_pow = 0;
  int sin_pow = 0;  // may be negative (csc)
  int cos_pow = 0;
  int m = 0;
  Harmonic kind = Harmonic::Cos;
};

template <class T>
struct TrigBasis;

class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::vector<TrigTerm> terms);
  static TrigPoly constant(double value);
  static TrigPoly term(double coef, int u_pow, int sin_pow, int cos_pow, int m = 0,
                       Harmonic kind = Harmonic::Cos);
  /// Unnormalized real harmonic P_l^m(cos theta) {cos|sin}(m psi) times
  /// sum_k u_coefs[k] u^k (no Condon-Shortley phase).
  static TrigPoly harmonic(int l, int m, Harmonic kind, const std::vector<double>& u_coefs);

  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TrigPoly d_u() const;
  TrigPoly d_theta() const;
  TrigPoly d_psi() const;
  /// Multiplies by sin^a cos^b.
  TrigPoly times_trig(int sin_pow, int cos_pow) const;
  /// Substitutes u = u0, leaving a u-independent polynomial.
  TrigPoly at_u(double u0) const;

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(double s);

  int max_u_pow() const;
  int min_sin_pow() const;
  int max_sin_pow() const;
  int max_cos_pow() const;
  int max_m() const;

  double operator()(double u, double theta, double psi) const;

  template <class T>
  T eval(const TrigBasis<T>& basis) const;

  template <class T>
  T eval(const T& u, const T& theta, const T& psi) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<TrigTerm> terms_;
};

TrigPoly operator+(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a);
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(double s, TrigPoly a);
TrigPoly operator*(TrigPoly a, double s);
inline TrigPoly cot_theta() { return TrigPoly::term(1.0, 0, -1, 1); }
inline TrigPoly csc_theta() { return TrigPoly::term(1.0, 0, -1, 0); }

/// Power tables shared by several polynomials evaluated at the same point.
template <class T>
struct TrigBasis {
  int sin_min = 0;
  std::vector<T> u_pows;
  std::vector<T> sin_pows;  // index = power - sin_min
  std::vector<T> cos_pows;
  std::vector<T> cos_m;
  std::vector<T> sin_m;

  TrigBasis(const T& u, const T& theta, const T& psi, int max_u, int min_sin, int max_sin,
            int max_cos, int max_m) {
    using std::cos;
    using std::sin;
    sin_min = std::min(min_sin, 0);
    const int sin_max = std::max(max_sin, 0);
    u_pows.resize(max_u + 1);
    u_pows[0] = T(1.0);
    for (int k = 1; k <= max_u; ++k) u_pows[k] = u_pows[k - 1] * u;
    const T s = sin(theta);
    const T c = cos(theta);
    sin_pows.resize(sin_max - sin_min + 1);
    sin_pows[-sin_min] = T(1.0);
    for (int k = 1; k <= sin_max; ++k) sin_pows[k - sin_min] = sin_pows[k - 1 - sin_min] * s;
    if (sin_min < 0) {
      const T inv = T(1.0) / s;
      for (int k = -1; k >= sin_min; --k) sin_pows[k - sin_min] = sin_pows[k + 1 - sin_min] * inv;
    }
    cos_pows.resize(max_cos + 1);
    cos_pows[0] = T(1.0);
    for (int k = 1; k <= max_cos; ++k) cos_pows[k] = cos_pows[k - 1] * c;
    cos_m.resize(max_m + 1);
    sin_m.resize(max_m + 1);
    for (int m = 0; m <= max_m; ++m) {
      cos_m[m] = cos(psi * static_cast<double>(m));
      sin_m[m] = sin(psi * static_cast<double>(m));
    }
  }

  TrigBasis(const T& u, const T& theta, const T& psi, const std::vector<const TrigPoly*>& polys)
      : TrigBasis(u, theta, psi, max_of(polys, &TrigPoly::max_u_pow), min_of(polys),
                  max_of(polys, &TrigPoly::max_sin_pow), max_of(polys, &TrigPoly::max_cos_pow),
                  max_of(polys, &TrigPoly::max_m)) {}

 private:
  static int max_of(const std::vector<const TrigPoly*>& polys, int (TrigPoly::*f)() const) {
    int r = 0;
    for (const TrigPoly* p : polys) r = std::max(r, (p->*f)());
    return r;
  }
  static int min_of(const std::vector<const TrigPoly*>& polys) {
    int r = 0;
    for (const TrigPoly* p : polys) r = std::min(r, p->min_sin_pow());
    return r;
  }
};

template <class T>
T TrigPoly::eval(const TrigBasis<T>& basis) const {
  T sum(0.0);
  for (const TrigTerm& t : terms_) {
    const T& harmonic = t.kind == Harmonic::Cos ? basis.cos_m[t.m] : basis.sin_m[t.m];
    sum += basis.u_pows[t.u_pow] * basis.sin_pows[t.sin_pow - basis.sin_min] *
           basis.cos_pows[t.cos_pow] * harmonic * t.coef;
  }
  return sum;
}

template <class T>
T TrigPoly::eval(const T& u, const T& theta, const T& psi) const {
  TrigBasis<T> basis(u, theta, psi, max_u_pow(), min_sin_pow(), max_sin_pow(), max_cos_pow(), max_m());
  return eval(basis);
}

}  // namespace charges
