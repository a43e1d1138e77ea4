#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<T, N>, N> carries exact second
// derivatives; every level is seeded with the same variables.

#include <array>
#include <cmath>
#include <type_traits>

namespace charges {

template <class T, int N>
struct Dual;

template <class T>
struct is_dual : std::false_type {};
template <class T, int N>
struct is_dual<Dual<T, N>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

template <class T>
struct base_scalar {
  using type = T;
};
template <class T, int N>
struct base_scalar<Dual<T, N>> {
  using type = typename base_scalar<T>::type;
};
template <class T>
using base_scalar_t = typename base_scalar<T>::type;

template <class T, int N>
struct Dual {
  using value_type = T;
  static constexpr int size = N;

  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;

  template <class S>
    requires std::is_arithmetic_v<S>
  constexpr Dual(S c) : v(static_cast<base_scalar_t<T>>(c)) {}  // NOLINT

  constexpr explicit Dual(const T& value)
    requires(!std::is_arithmetic_v<T>)
      : v(value) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    v /= o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * o.d[i]) / o.v;
    return *this;
  }
  template <class S>
    requires std::is_arithmetic_v<S>
  Dual& operator*=(S s) {
    v *= s;
    for (auto& x : d) x *= s;
    return *this;
  }
  template <class S>
    requires std::is_arithmetic_v<S>
  Dual& operator/=(S s) {
    v /= s;
    for (auto& x : d) x /= s;
    return *this;
  }
  template <class S>
    requires std::is_arithmetic_v<S>
  Dual& operator+=(S s) {
    v += s;
    return *this;
  }
  template <class S>
    requires std::is_arithmetic_v<S>
  Dual& operator-=(S s) {
    v -= s;
    return *this;
  }
};

template <class T, int N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N>& b) {
  return a += b;
}
template <class T, int N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N>& b) {
  return a -= b;
}
template <class T, int N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> operator/(Dual<T, N> a, const Dual<T, N>& b) {
  return a /= b;
}

template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator+(Dual<T, N> a, S s) {
  return a += s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator+(S s, Dual<T, N> a) {
  return a += s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator-(Dual<T, N> a, S s) {
  return a -= s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator-(S s, const Dual<T, N>& a) {
  Dual<T, N> r = -a;
  return r += s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator*(Dual<T, N> a, S s) {
  return a *= s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator*(S s, Dual<T, N> a) {
  return a *= s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator/(Dual<T, N> a, S s) {
  return a /= s;
}
template <class T, int N, class S>
  requires std::is_arithmetic_v<S>
Dual<T, N> operator/(S s, const Dual<T, N>& a) {
  return Dual<T, N>(s) / a;
}

/// Innermost real value.
template <class T>
constexpr auto value_of(const T& x) {
  if constexpr (is_dual_v<T>) {
    return value_of(x.v);
  } else {
    return x;
  }
}

namespace detail {
// Applies f to the value and scales the tangents by f'(value).
template <class T, int N, class F, class DF>
Dual<T, N> chain(const Dual<T, N>& x, F f, DF df) {
  Dual<T, N> r;
  r.v = f(x.v);
  const T slope = df(x.v);
  for (int i = 0; i < N; ++i) r.d[i] = slope * x.d[i];
  return r;
}
}  // namespace detail

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  Dual<T, N> r;
  r.v = sqrt(x.v);
  const T inv2 = 0.5 / r.v;
  for (int i = 0; i < N; ++i) r.d[i] = inv2 * x.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> exp(const Dual<T, N>& x) {
  using std::exp;
  Dual<T, N> r;
  r.v = exp(x.v);
  for (int i = 0; i < N; ++i) r.d[i] = r.v * x.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> log(const Dual<T, N>& x) {
  using std::log;
  return detail::chain(
      x, [](const T& a) { return log(a); }, [](const T& a) { return 1.0 / a; });
}
template <class T, int N>
Dual<T, N> sin(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return detail::chain(
      x, [](const T& a) { return sin(a); }, [](const T& a) { return cos(a); });
}
template <class T, int N>
Dual<T, N> cos(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return detail::chain(
      x, [](const T& a) { return cos(a); }, [](const T& a) { return -sin(a); });
}
template <class T, int N>
Dual<T, N> sinh(const Dual<T, N>& x) {
  using std::cosh;
  using std::sinh;
  return detail::chain(
      x, [](const T& a) { return sinh(a); }, [](const T& a) { return cosh(a); });
}
template <class T, int N>
Dual<T, N> cosh(const Dual<T, N>& x) {
  using std::cosh;
  using std::sinh;
  return detail::chain(
      x, [](const T& a) { return cosh(a); }, [](const T& a) { return sinh(a); });
}
template <class T, int N>
Dual<T, N> acos(const Dual<T, N>& x) {
  using std::acos;
  using std::sqrt;
  return detail::chain(
      x, [](const T& a) { return acos(a); },
      [](const T& a) { return -1.0 / sqrt(1.0 - a * a); });
}
template <class T, int N>
Dual<T, N> atan2(const Dual<T, N>& y, const Dual<T, N>& x) {
  using std::atan2;
  Dual<T, N> r;
  r.v = atan2(y.v, x.v);
  const T den = x.v * x.v + y.v * y.v;
  for (int i = 0; i < N; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / den;
  return r;
}

/// Integer power by repeated squaring; negative exponents invert.
template <class T>
T ipow(const T& x, int n) {
  if (n < 0) return T(1.0) / ipow(x, -n);
  T result(1.0);
  T base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// `value` as independent variable `index` at every nesting level.
template <class T>
T make_variable(base_scalar_t<T> value, int index) {
  if constexpr (is_dual_v<T>) {
    T r;
    r.v = make_variable<typename T::value_type>(value, index);
    r.d[index] = typename T::value_type(1.0);
    return r;
  } else {
    return value;
  }
}

/// Seeds only the outermost level: `inner` keeps its own tangents.
template <int N, class T>
Dual<T, N> seed_outer(const T& inner, int index) {
  Dual<T, N> r;
  r.v = inner;
  r.d[index] = T(1.0);
  return r;
}

/// Converts the innermost scalar type (e.g. long double -> double).
template <class To, class From>
auto scalar_cast(const From& x) {
  if constexpr (is_dual_v<From>) {
    using Inner = decltype(scalar_cast<To>(x.v));
    Dual<Inner, From::size> r;
    r.v = scalar_cast<To>(x.v);
    for (int i = 0; i < From::size; ++i) r.d[i] = scalar_cast<To>(x.d[i]);
    return r;
  } else {
    return static_cast<To>(x);
  }
}

}  // namespace charges
