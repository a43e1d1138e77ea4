#include "charges/spacetimes.hpp"

#include <cmath>
#include <numbers>

namespace charges {

namespace {

constexpr double kPi = std::numbers::pi;

class MinkowskiMetric : public MetricModel<MinkowskiMetric> {
 public:
  explicit MinkowskiMetric(Chart chart) : chart_(chart) {}
  Chart chart() const override { return chart_; }
  std::string name() const override { return "minkowski/" + to_string(chart_); }

  template <class T>
  Mat4<T> components(const Vec4<T>& x) const {
    using std::sin;
    Mat4<T> g = zero_matrix<T, 4>();
    g[0][0] = T(-1.0);
    if (chart_ == Chart::Cartesian) {
      for (int i = 1; i < 4; ++i) g[i][i] = T(1.0);
      return g;
    }
    const T& r = x[1];
    const T s = sin(x[2]);
    if (chart_ == Chart::StaticPolar) {
      g[1][1] = T(1.0);
    } else {
      g[0][1] = g[1][0] = T(-1.0);
    }
    g[2][2] = r * r;
    g[3][3] = r * r * s * s;
    return g;
  }

 private:
  Chart chart_;
};

class SchwarzschildMetric : public MetricModel<SchwarzschildMetric> {
 public:
  SchwarzschildMetric(double m, Chart chart) : m_(m), chart_(chart) {
    if (!(m >= 0.0)) throw ConfigError("schwarzschild mass must be >= 0");
    if (chart == Chart::Cartesian) throw ConfigError("schwarzschild supports static-polar and retarded charts");
  }
  Chart chart() const override { return chart_; }
  std::string name() const override { return "schwarzschild/" + to_string(chart_); }

  template <class T>
  Mat4<T> components(const Vec4<T>& x) const {
    using std::sin;
    const T& r = x[1];
    if (!(value_of(r) > 2.0 * m_)) throw DegenerateError("schwarzschild evaluated at r <= 2m");
    const T s = sin(x[2]);
    const T f = 1.0 - 2.0 * m_ / r;
    Mat4<T> g = zero_matrix<T, 4>();
    g[0][0] = -f;
    if (chart_ == Chart::StaticPolar) {
      g[1][1] = T(1.0) / f;
    } else {
      g[0][1] = g[1][0] = T(-1.0);
    }
    g[2][2] = r * r;
    g[3][3] = r * r * s * s;
    return g;
  }

 private:
  double m_;
  Chart chart_;
};

class KerrMetric : public MetricModel<KerrMetric> {
 public:
  explicit KerrMetric(const KerrParameters& p) : p_(p) {
    if (!(p.m > 0.0)) throw ConfigError("kerr mass must be > 0");
  }
  Chart chart() const override { return Chart::StaticPolar; }
  std::string name() const override { return "kerr"; }

  template <class T>
  Mat4<T> components(const Vec4<T>& x) const {
    using std::cos;
    using std::sin;
    const double m = p_.m;
    const double a = p_.a;
    const T& r = x[1];
    const T s = sin(x[2]);
    const T c = cos(x[2]);
    const T sigma = r * r + a * a * c * c;
    const T delta = r * r - 2.0 * m * r + a * a;
    if (!(value_of(delta) > 0)) throw DegenerateError("kerr evaluated where Delta <= 0");
    Mat4<T> g = zero_matrix<T, 4>();
    g[0][0] = -(1.0 - 2.0 * m * r / sigma);
    g[0][3] = g[3][0] = -2.0 * m * a * r * s * s / sigma;
    g[1][1] = sigma / delta;
    g[2][2] = sigma;
    g[3][3] = (r * r + a * a + 2.0 * m * r * a * a * s * s / sigma) * s * s;
    return g;
  }

 private:
  KerrParameters p_;
};

class BondiMetric : public MetricModel<BondiMetric> {
 public:
  BondiMetric(BondiExpansion e, double r_min) : e_(std::move(e)), r_min_(r_min) {}
  Chart chart() const override { return Chart::Retarded; }
  std::string name() const override { return "bondi"; }

  template <class T>
  Mat4<T> components(const Vec4<T>& x) const {
    using std::cosh;
    using std::exp;
    using std::sin;
    using std::sinh;
    const T& r = x[1];
    if (!(value_of(r) >= r_min_)) throw DegenerateError("bondi metric evaluated below r_min");
    const BondiFunctions<T> f = bondi_functions(e_, x[0], r, x[2], x[3]);
    const T e2b = exp(f.beta * 2.0);
    const T e2g = exp(f.gamma * 2.0);
    const T em2g = T(1.0) / e2g;
    const T ch = cosh(f.delta * 2.0);
    const T sh = sinh(f.delta * 2.0);
    const T s = sin(x[2]);
    const T r2 = r * r;
    Mat4<T> g = zero_matrix<T, 4>();
    g[0][0] = f.V / r * e2b + r2 * (e2g * f.U * f.U * ch + em2g * f.W * f.W * ch + f.U * f.W * sh * 2.0);
    g[0][1] = g[1][0] = -e2b;
    g[0][2] = g[2][0] = -r2 * (e2g * f.U * ch + f.W * sh);
    g[0][3] = g[3][0] = -r2 * (em2g * f.W * ch + f.U * sh) * s;
    g[2][2] = r2 * e2g * ch;
    g[3][3] = r2 * em2g * ch * s * s;
    g[2][3] = g[3][2] = r2 * sh * s;
    return g;
  }

 private:
  BondiExpansion e_;
  double r_min_;
};

class ConstantTimeSlice : public EmbeddingModel<ConstantTimeSlice> {
 public:
  ConstantTimeSlice(Chart3 source, Chart target, double t0) : source_(source), target_(target), t0_(t0) {
    if (source == Chart3::Polar && target == Chart::Cartesian)
      throw UsageError("polar slices cannot target a Cartesian spacetime chart");
  }
  Chart3 source_chart() const override { return source_; }
  Chart target_chart() const override { return target_; }
  std::string name() const override { return "t=const"; }

  template <class T>
  Vec4<T> map(const Vec3<T>& y) const {
    using std::acos;
    using std::atan2;
    using std::sqrt;
    if (source_ == Chart3::Polar || target_ == Chart::Cartesian) return {T(t0_), y[0], y[1], y[2]};
    const T r = sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    T psi = atan2(y[1], y[0]);
    if (value_of(psi) < 0) psi += 2.0 * kPi;
    return {T(t0_), r, acos(y[2] / r), psi};
  }

 private:
  Chart3 source_;
  Chart target_;
  double t0_;
};

class HyperboloidEmbedding : public EmbeddingModel<HyperboloidEmbedding> {
 public:
  HyperboloidEmbedding(Chart target, double u0) : target_(target), u0_(u0) {
    if (target == Chart::Cartesian) throw UsageError("hyperboloid embedding needs a polar target chart");
  }
  Chart3 source_chart() const override { return Chart3::Polar; }
  Chart target_chart() const override { return target_; }
  std::string name() const override { return "hyperboloid"; }

  template <class T>
  Vec4<T> map(const Vec3<T>& y) const {
    using std::sqrt;
    const T& r = y[0];
    const T s = sqrt(r * r + 1.0);
    // sqrt(1+r^2) - r written without cancellation
    const T time = target_ == Chart::StaticPolar ? s : T(1.0) / (s + r) + u0_;
    return {time, r, y[1], y[2]};
  }

 private:
  Chart target_;
  double u0_;
};

class BondiSliceEmbedding : public EmbeddingModel<BondiSliceEmbedding> {
 public:
  BondiSliceEmbedding(const SliceSpec& spec, const BondiExpansion& e)
      : spec_(spec), news2_((e.c * e.c + e.d * e.d).at_u(spec.u0)) {
    if (spec.a4_power < 5) throw ConfigError("a4 must decay faster than 1/r^4 (a4_power >= 5)");
  }
  Chart3 source_chart() const override { return Chart3::Polar; }
  Chart target_chart() const override { return Chart::Retarded; }
  std::string name() const override { return "bondi-slice"; }

  template <class T>
  Vec4<T> map(const Vec3<T>& y) const {
    using std::sqrt;
    const T& r = y[0];
    const T zero(0.0);
    const T ir = T(1.0) / r;
    const T ir3 = ir * ir * ir;
    T u = T(1.0) / (sqrt(r * r + 1.0) + r) + spec_.u0;
    if (!news2_.is_zero()) u += news2_.eval(zero, y[1], y[2]) * ir3 / 12.0;
    if (!spec_.a3.is_zero()) u += spec_.a3.eval(zero, y[1], y[2]) * ir3 * ir;
    if (!spec_.a4.is_zero()) u += spec_.a4.eval(zero, y[1], y[2]) * ipow(ir, spec_.a4_power);
    return {u, r, y[1], y[2]};
  }

 private:
  SliceSpec spec_;
  TrigPoly news2_;
};

// sum_k coefs[k] u^k
TrigPoly u_poly(const std::vector<double>& coefs) {
  std::vector<TrigTerm> terms;
  for (std::size_t k = 0; k < coefs.size(); ++k) terms.push_back(TrigTerm{coefs[k], static_cast<int>(k), 0, 0, 0});
  return TrigPoly(std::move(terms));
}

}  // namespace

MetricPtr minkowski(Chart chart) { return std::make_shared<MinkowskiMetric>(chart); }

MetricPtr schwarzschild(double m, Chart chart) { return std::make_shared<SchwarzschildMetric>(m, chart); }

MetricPtr kerr(const KerrParameters& params) { return std::make_shared<KerrMetric>(params); }

MetricPtr bondi_metric(const BondiExpansion& expansion, double r_min) {
  if (!(r_min > 0.0)) throw ConfigError("r_min must be positive");
  return std::make_shared<BondiMetric>(expansion, r_min);
}

double default_r_min(const BondiExpansion& e, double u_lo, double u_hi) {
  double sup = 1.0;
  const int nu = u_hi > u_lo ? 21 : 1;
  for (int k = 0; k < nu; ++k) {
    const double u = nu == 1 ? u_lo : u_lo + (u_hi - u_lo) * k / (nu - 1);
    for (int i = 1; i < 32; ++i) {
      const double th = kPi * i / 32.0;
      for (int j = 0; j < 32; ++j) {
        const double ps = 2.0 * kPi * j / 32.0;
        sup = std::max({sup, std::abs(e.c(u, th, ps)), std::abs(e.d(u, th, ps))});
      }
    }
  }
  return 5.0 * sup;
}

EmbeddingPtr constant_time_slice(Chart3 source, Chart target, double t0) {
  return std::make_shared<ConstantTimeSlice>(source, target, t0);
}

EmbeddingPtr hyperboloid_embedding(Chart target, double u0) {
  return std::make_shared<HyperboloidEmbedding>(target, u0);
}

EmbeddingPtr bondi_slice_embedding(const SliceSpec& spec, const BondiExpansion& expansion) {
  return std::make_shared<BondiSliceEmbedding>(spec, expansion);
}

BondiExpansion schwarzschild_expansion(double m) {
  return BondiExpansion::make({}, {}, {}, {}, TrigPoly::constant(m), {}, {});
}

BondiExpansion quadrupole_expansion(double amplitude, double m, double u_n) {
  const TrigPoly c = u_poly({-amplitude * u_n, amplitude}).times_trig(2, 0);
  return BondiExpansion::make(c, {}, {}, {}, TrigPoly::constant(m), {}, {});
}

BondiExpansion biaxial_expansion(double amplitude, double m, double u_n) {
  const double A = amplitude;
  const TrigPoly shape = TrigPoly::term(1.0, 0, 2, 0) + TrigPoly::term(0.5, 0, 2, 0, 2, Harmonic::Cos);
  const TrigPoly c = A * u_poly({-u_n + 0.3 * u_n * u_n, 1.0 - 0.6 * u_n, 0.3}) * shape;
  const TrigPoly d = A * u_poly({-u_n, 1.0}) * TrigPoly::term(1.0, 0, 2, 1, 1, Harmonic::Sin);
  const TrigPoly C = TrigPoly::term(0.2 * A, 0, 2, 0, 2, Harmonic::Cos);
  const TrigPoly H = TrigPoly::term(0.1 * A, 0, 2, 0, 2, Harmonic::Sin);
  const TrigPoly M = TrigPoly::constant(m) + TrigPoly::term(0.2 * m, 0, 0, 1) +
                     TrigPoly::term(0.1 * m, 0, 1, 0, 1, Harmonic::Cos);
  const TrigPoly N = TrigPoly::term(0.1 * A, 0, 1, 1);
  const TrigPoly P = TrigPoly::term(0.05 * A, 0, 1, 0, 1, Harmonic::Cos);
  return BondiExpansion::make(c, d, C, H, M, N, P);
}

std::vector<std::string> preset_names() {
  return {"minkowski", "schwarzschild", "kerr", "bondi-schwarzschild", "bondi-quadrupole", "bondi-biaxial"};
}

}  // namespace charges
