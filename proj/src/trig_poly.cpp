#include "charges/trig_poly.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "charges/errors.hpp"

namespace charges {

namespace {

using Key = std::tuple<int, int, int, int, int>;

Key key_of(const TrigTerm& t) { return {t.u_pow, t.sin_pow, t.cos_pow, t.m, static_cast<int>(t.kind)}; }

// Legendre polynomial coefficients (ascending powers of x).
std::vector<double> legendre(int l) {
  std::vector<double> p0{1.0};
  if (l == 0) return p0;
  std::vector<double> p1{0.0, 1.0};
  for (int k = 1; k < l; ++k) {
    std::vector<double> p2(k + 2, 0.0);
    for (std::size_t i = 0; i < p1.size(); ++i) p2[i + 1] += (2.0 * k + 1.0) * p1[i] / (k + 1.0);
    for (std::size_t i = 0; i < p0.size(); ++i) p2[i] -= k * p0[i] / (k + 1.0);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

}  // namespace

TrigPoly::TrigPoly(std::vector<TrigTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

TrigPoly TrigPoly::constant(double value) { return term(value, 0, 0, 0); }

TrigPoly TrigPoly::term(double coef, int u_pow, int sin_pow, int cos_pow, int m, Harmonic kind) {
  if (u_pow < 0 || cos_pow < 0 || m < 0) throw UsageError("negative u/cos power or harmonic order");
  return TrigPoly({TrigTerm{coef, u_pow, sin_pow, cos_pow, m, kind}});
}

TrigPoly TrigPoly::harmonic(int l, int m, Harmonic kind, const std::vector<double>& u_coefs) {
  if (l < 0 || m < 0 || m > l) throw ConfigError("harmonic mode requires 0 <= m <= l");
  std::vector<double> p = legendre(l);
  for (int k = 0; k < m; ++k) {
    std::vector<double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = i * p[i];
    p = std::move(dp);
  }
  std::vector<TrigTerm> terms;
  for (std::size_t j = 0; j < u_coefs.size(); ++j) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      terms.push_back(TrigTerm{u_coefs[j] * p[i], static_cast<int>(j), m, static_cast<int>(i), m, kind});
    }
  }
  return TrigPoly(std::move(terms));
}

void TrigPoly::canonicalize() {
  std::map<Key, TrigTerm> merged;
  for (const TrigTerm& t : terms_) {
    if (t.m == 0 && t.kind == Harmonic::Sin) continue;
    if (t.coef == 0.0) continue;
    auto [it, inserted] = merged.emplace(key_of(t), t);
    if (!inserted) it->second.coef += t.coef;
  }
  terms_.clear();
  for (auto& [k, t] : merged)
    if (t.coef != 0.0) terms_.push_back(t);
}

TrigPoly TrigPoly::d_u() const {
  std::vector<TrigTerm> out;
  for (TrigTerm t : terms_) {
    if (t.u_pow == 0) continue;
    t.coef *= t.u_pow;
    --t.u_pow;
    out.push_back(t);
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::d_theta() const {
  std::vector<TrigTerm> out;
  for (const TrigTerm& t : terms_) {
    if (t.sin_pow != 0) {
      TrigTerm a = t;
      a.coef *= t.sin_pow;
      a.sin_pow -= 1;
      a.cos_pow += 1;
      out.push_back(a);
    }
    if (t.cos_pow != 0) {
      TrigTerm b = t;
      b.coef *= -t.cos_pow;
      b.sin_pow += 1;
      b.cos_pow -= 1;
      out.push_back(b);
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::d_psi() const {
  std::vector<TrigTerm> out;
  for (TrigTerm t : terms_) {
    if (t.m == 0) continue;
    if (t.kind == Harmonic::Cos) {
      t.coef *= -t.m;
      t.kind = Harmonic::Sin;
    } else {
      t.coef *= t.m;
      t.kind = Harmonic::Cos;
    }
    out.push_back(t);
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::times_trig(int sin_pow, int cos_pow) const {
  std::vector<TrigTerm> out = terms_;
  for (TrigTerm& t : out) {
    t.sin_pow += sin_pow;
    t.cos_pow += cos_pow;
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::at_u(double u0) const {
  std::vector<TrigTerm> out;
  for (TrigTerm t : terms_) {
    t.coef *= std::pow(u0, t.u_pow);
    t.u_pow = 0;
    out.push_back(t);
  }
  return TrigPoly(std::move(out));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  for (TrigTerm t : o.terms_) {
    t.coef = -t.coef;
    terms_.push_back(t);
  }
  canonicalize();
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (TrigTerm& t : terms_) t.coef *= s;
  canonicalize();
  return *this;
}

TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
TrigPoly operator*(double s, TrigPoly a) { return a *= s; }
TrigPoly operator*(TrigPoly a, double s) { return a *= s; }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  std::vector<TrigTerm> out;
  out.reserve(2 * a.terms().size() * b.terms().size());
  for (const TrigTerm& x : a.terms()) {
    for (const TrigTerm& y : b.terms()) {
      TrigTerm base{0.5 * x.coef * y.coef, x.u_pow + y.u_pow, x.sin_pow + y.sin_pow,
                    x.cos_pow + y.cos_pow, 0, Harmonic::Cos};
      const int diff = x.m - y.m;
      const int sum = x.m + y.m;
      TrigTerm t1 = base;
      TrigTerm t2 = base;
      t1.m = std::abs(diff);
      t2.m = sum;
      const double diff_sign = diff < 0 ? -1.0 : 1.0;  // sin(-z) = -sin(z)
      if (x.kind == Harmonic::Cos && y.kind == Harmonic::Cos) {
        // cos a cos b = (cos(a-b) + cos(a+b)) / 2
      } else if (x.kind == Harmonic::Sin && y.kind == Harmonic::Sin) {
        // sin a sin b = (cos(a-b) - cos(a+b)) / 2
        t2.coef = -t2.coef;
      } else if (x.kind == Harmonic::Sin) {
        // sin a cos b = (sin(a+b) + sin(a-b)) / 2
        t1.kind = t2.kind = Harmonic::Sin;
        t1.coef *= diff_sign;
      } else {
        // cos a sin b = (sin(a+b) - sin(a-b)) / 2
        t1.kind = t2.kind = Harmonic::Sin;
        t1.coef *= -diff_sign;
      }
      out.push_back(t1);
      out.push_back(t2);
    }
  }
  return TrigPoly(std::move(out));
}

int TrigPoly::max_u_pow() const {
  int r = 0;
  for (const auto& t : terms_) r = std::max(r, t.u_pow);
  return r;
}
int TrigPoly::min_sin_pow() const {
  int r = 0;
  for (const auto& t : terms_) r = std::min(r, t.sin_pow);
  return r;
}
int TrigPoly::max_sin_pow() const {
  int r = 0;
  for (const auto& t : terms_) r = std::max(r, t.sin_pow);
  return r;
}
int TrigPoly::max_cos_pow() const {
  int r = 0;
  for (const auto& t : terms_) r = std::max(r, t.cos_pow);
  return r;
}
int TrigPoly::max_m() const {
  int r = 0;
  for (const auto& t : terms_) r = std::max(r, t.m);
  return r;
}

double TrigPoly::operator()(double u, double theta, double psi) const { return eval<double>(u, theta, psi); }

std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coef;
    if (t.u_pow) os << "*u^" << t.u_pow;
    if (t.sin_pow) os << "*sin^" << t.sin_pow;
    if (t.cos_pow) os << "*cos^" << t.cos_pow;
    if (t.m) os << (t.kind == Harmonic::Cos ? "*cos(" : "*sin(") << t.m << "psi)";
  }
  return os.str();
}

}  // namespace charges
