#pragma once

// Coefficient functions of the asymptotic Bondi expansion and the six
// truncated metric functions built from them.

#include <string>

#include "charges/trig_poly.hpp"

namespace charges {

struct BondiExpansion {
  TrigPoly c, d;     // news potentials
  TrigPoly C, H;     // third-order coefficients of gamma, delta
  TrigPoly M;        // mass aspect
  TrigPoly N, P;     // angular momentum aspects
  // Derived from c, d, N, P by `derive()`.
  TrigPoly l, lbar, p, pbar;

  /// Fills l, lbar, p, pbar.
  void derive();
  /// Constructs an expansion and its derived fields.
  static BondiExpansion make(TrigPoly c, TrigPoly d, TrigPoly C, TrigPoly H, TrigPoly M, TrigPoly N,
                             TrigPoly P);
  /// Every polynomial, for building a shared TrigBasis.
  std::vector<const TrigPoly*> all() const;
  /// Same expansion with every coefficient frozen at u = u0 (derivatives in u lost).
  BondiExpansion at_u(double u0) const;
};

/// l = c_th + 2c cot + d_ps csc, and the companions.
TrigPoly derive_l(const TrigPoly& c, const TrigPoly& d);
TrigPoly derive_lbar(const TrigPoly& c, const TrigPoly& d);
TrigPoly derive_p(const TrigPoly& c, const TrigPoly& d, const TrigPoly& N);
TrigPoly derive_pbar(const TrigPoly& c, const TrigPoly& d, const TrigPoly& P);

template <class T>
struct BondiFunctions {
  T beta, gamma, delta, U, V, W;
};

/// Each series cut after its last displayed term.
template <class T>
BondiFunctions<T> bondi_functions(const BondiExpansion& e, const T& u, const T& r, const T& theta,
                                  const T& psi) {
  const TrigBasis<T> basis(u, theta, psi, e.all());
  const T c = e.c.eval(basis);
  const T d = e.d.eval(basis);
  const T C = e.C.eval(basis);
  const T H = e.H.eval(basis);
  const T M = e.M.eval(basis);
  const T l = e.l.eval(basis);
  const T lbar = e.lbar.eval(basis);
  const T p = e.p.eval(basis);
  const T pbar = e.pbar.eval(basis);
  const T ir = T(1.0) / r;
  const T ir2 = ir * ir;
  const T ir3 = ir2 * ir;
  BondiFunctions<T> f;
  f.gamma = c * ir + (C - c * c * c / 6.0 - c * d * d * 1.5) * ir3;
  f.delta = d * ir + (H + c * c * d * 0.5 - d * d * d / 6.0) * ir3;
  f.beta = -(c * c + d * d) * ir2 * 0.25;
  f.U = -l * ir2 + p * ir3;
  f.W = -lbar * ir2 + pbar * ir3;
  f.V = -r + M * 2.0;
  return f;
}

}  // namespace charges
