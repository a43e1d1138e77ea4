#include "charges/bondi_expansion.hpp"

namespace charges {

TrigPoly derive_l(const TrigPoly& c, const TrigPoly& d) {
  return c.d_theta() + 2.0 * c.times_trig(-1, 1) + d.d_psi().times_trig(-1, 0);
}

TrigPoly derive_lbar(const TrigPoly& c, const TrigPoly& d) {
  return d.d_theta() + 2.0 * d.times_trig(-1, 1) - c.d_psi().times_trig(-1, 0);
}

TrigPoly derive_p(const TrigPoly& c, const TrigPoly& d, const TrigPoly& N) {
  const TrigPoly ct = c.d_theta();
  const TrigPoly dt = d.d_theta();
  const TrigPoly cp = c.d_psi();
  const TrigPoly dp = d.d_psi();
  return 2.0 * N + 3.0 * (c * ct + d * dt) + 4.0 * (c * c + d * d).times_trig(-1, 1) -
         2.0 * (cp * d - c * dp).times_trig(-1, 0);
}

TrigPoly derive_pbar(const TrigPoly& c, const TrigPoly& d, const TrigPoly& P) {
  const TrigPoly ct = c.d_theta();
  const TrigPoly dt = d.d_theta();
  const TrigPoly cp = c.d_psi();
  const TrigPoly dp = d.d_psi();
  return 2.0 * P + 2.0 * (ct * d - c * dt) + 3.0 * (c * cp + d * dp).times_trig(-1, 0);
}

void BondiExpansion::derive() {
  l = derive_l(c, d);
  lbar = derive_lbar(c, d);
  p = derive_p(c, d, N);
  pbar = derive_pbar(c, d, P);
}

BondiExpansion BondiExpansion::make(TrigPoly c, TrigPoly d, TrigPoly C, TrigPoly H, TrigPoly M, TrigPoly N,
                                    TrigPoly P) {
  BondiExpansion e;
  e.c = std::move(c);
  e.d = std::move(d);
  e.C = std::move(C);
  e.H = std::move(H);
  e.M = std::move(M);
  e.N = std::move(N);
  e.P = std::move(P);
  e.derive();
  return e;
}

std::vector<const TrigPoly*> BondiExpansion::all() const {
  return {&c, &d, &C, &H, &M, &N, &P, &l, &lbar, &p, &pbar};
}

BondiExpansion BondiExpansion::at_u(double u0) const {
  return make(c.at_u(u0), d.at_u(u0), C.at_u(u0), H.at_u(u0), M.at_u(u0), N.at_u(u0), P.at_u(u0));
}

}  // namespace charges
