#pragma once

// Exact-derivative geometry: 4-metric evaluators, hypersurface embeddings,
// pullback to initial data (g, p) in a chosen frame, and 3-curvature /
// constraint quantities of initial data.

#include <functional>
#include <memory>
#include <string>

#include "charges/tensor.hpp"

namespace charges {

enum class Chart {
  Cartesian,    // (t, x, y, z)
  StaticPolar,  // (t, r, theta, psi)
  Retarded,     // (u, r, theta, psi)
};

std::string to_string(Chart chart);

struct SpacetimePoint {
  Chart chart = Chart::StaticPolar;
  Vec4<double> x{};
};

/// Scalar types an evaluator must support. Pullbacks run in extended precision.
using EmbeddingScalar = Dual<WJet2, 3>;
using WideConnectionScalar = Dual<WJet1, 4>;

/// A 4-metric g_{ab}(x) with signature (-,+,+,+). Implementations provide one
/// template `components<T>` through MetricModel; derivatives come from
/// evaluating it on dual numbers.
class Metric4 {
 public:
  virtual ~Metric4() = default;
  virtual Chart chart() const = 0;
  virtual std::string name() const = 0;

  virtual Mat4<double> eval(const Vec4<double>& x) const = 0;
  virtual Mat4<D4> eval(const Vec4<D4>& x) const = 0;
  virtual Mat4<D44> eval(const Vec4<D44>& x) const = 0;
  virtual Mat4<WJet2> eval(const Vec4<WJet2>& x) const = 0;
  virtual Mat4<WideConnectionScalar> eval(const Vec4<WideConnectionScalar>& x) const = 0;
};

template <class Derived>
class MetricModel : public Metric4 {
 public:
  Mat4<double> eval(const Vec4<double>& x) const override { return self().components(x); }
  Mat4<D4> eval(const Vec4<D4>& x) const override { return self().components(x); }
  Mat4<D44> eval(const Vec4<D44>& x) const override { return self().components(x); }
  Mat4<WJet2> eval(const Vec4<WJet2>& x) const override { return self().components(x); }
  Mat4<WideConnectionScalar> eval(const Vec4<WideConnectionScalar>& x) const override {
    return self().components(x);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

using MetricPtr = std::shared_ptr<const Metric4>;

/// Chart of the 3-manifold: Cartesian (x, y, z) or polar (r, theta, psi).
enum class Chart3 { Cartesian, Polar };

/// A map from a 3-chart into a spacetime chart.
class Embedding {
 public:
  virtual ~Embedding() = default;
  virtual Chart3 source_chart() const = 0;
  virtual Chart target_chart() const = 0;
  virtual std::string name() const = 0;
  virtual Vec4<double> eval(const Vec3<double>& y) const = 0;
  virtual Vec4<EmbeddingScalar> eval(const Vec3<EmbeddingScalar>& y) const = 0;
};

template <class Derived>
class EmbeddingModel : public Embedding {
 public:
  Vec4<double> eval(const Vec3<double>& y) const override { return self().map(y); }
  Vec4<EmbeddingScalar> eval(const Vec3<EmbeddingScalar>& y) const override { return self().map(y); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

using EmbeddingPtr = std::shared_ptr<const Embedding>;

enum class FrameKind {
  Euclidean,   // e_i = d/dx^i on the Cartesian chart
  Hyperbolic,  // e_1 = sqrt(1+r^2) d_r, e_2 = r^-1 d_theta, e_3 = (r sin theta)^-1 d_psi
};

/// Frame vectors e_i = scale_i * (base frame vector i).
struct Frame {
  FrameKind kind = FrameKind::Euclidean;
  Vec3<double> scale{1.0, 1.0, 1.0};

  Chart3 chart() const { return kind == FrameKind::Euclidean ? Chart3::Cartesian : Chart3::Polar; }

  /// E[i][a]: chart component a of frame vector i.
  template <class T>
  Mat3<T> vectors(const Vec3<T>& y) const {
    using std::sin;
    using std::sqrt;
    Mat3<T> e = zero_matrix<T, 3>();
    if (kind == FrameKind::Euclidean) {
      for (int i = 0; i < 3; ++i) e[i][i] = T(scale[i]);
    } else {
      const T& r = y[0];
      e[0][0] = sqrt(r * r + 1.0) * scale[0];
      e[1][1] = scale[1] / r;
      e[2][2] = scale[2] / (r * sin(y[1]));
    }
    return e;
  }
};

/// Frame components of (g, p) at one chart point, with exact derivatives
/// with respect to the chart coordinates (second order for g, first for p).
struct PointData {
  Vec3<double> y{};
  Mat3<Jet2> frame;  // E[i][a]
  Mat3<Jet2> g;      // g(e_i, e_j)
  Mat3<Jet1> p;      // p(e_i, e_j), not necessarily symmetric
};

class InitialData {
 public:
  using Evaluator = std::function<PointData(const Vec3<double>&)>;

  InitialData(Frame frame, bool symmetric_p, Evaluator evaluator, std::string name);

  PointData operator()(const Vec3<double>& y) const { return evaluator_(y); }
  const Frame& frame() const { return frame_; }
  Chart3 chart() const { return frame_.chart(); }
  bool symmetric_p() const { return symmetric_p_; }
  const std::string& name() const { return name_; }

 private:
  Frame frame_;
  bool symmetric_p_;
  Evaluator evaluator_;
  std::string name_;
};

/// Fills `frame` for closed-form data evaluators.
Mat3<Jet2> frame_jets(const Frame& frame, const Vec3<double>& y);

/// Seeds chart coordinates as second-order jets.
Vec3<Jet2> seed_chart_point(const Vec3<double>& y);

/// Gamma^a_{bc}, indexed [a][b][c].
using Christoffel4 = std::array<Mat4<double>, 4>;

Christoffel4 christoffel4(const Metric4& metric, const SpacetimePoint& point);

/// Frobenius norm of the coordinate Ricci tensor.
double ricci_residual(const Metric4& metric, const SpacetimePoint& point);

/// Induced metric and second fundamental form of the embedded slice in the
/// given frame. The frame is pushed forward by the embedding differential;
/// h(X, Y) = g(nabla_X n, Y) with n the future unit normal, so the Minkowski
/// hyperboloid has h = +g. Throws DegenerateError where the slice is not
/// spacelike or the metric is singular.
InitialData pullback_initial_data(MetricPtr metric, EmbeddingPtr embedding, Frame frame);

/// Single-point pullback (used by pullback_initial_data).
PointData pullback_point(const Metric4& metric, const Embedding& embedding, const Frame& frame,
                         const Vec3<double>& y);

/// R_{ijkl} in frame components, R_{ijkl} = K (g_ik g_jl - g_il g_jk) for constant curvature K.
using Riemann3 = std::array<std::array<Mat3<double>, 3>, 3>;

struct Curvature3 {
  Riemann3 riemann;
  double scalar = 0.0;
};

Curvature3 curvature3(const PointData& data);

struct ConstraintQuantities {
  double mu = 0.0;              // (R + (tr p)^2 - p_ij p^ij) / 2
  Vec3<double> varpi{};         // nabla^i p_ji - nabla_j tr p (frame components)
  Vec3<double> sigma{};         // 2 nabla^i (p_ij - p_ji)
  double varpi_norm = 0.0;      // g-norm of varpi
  double varpi_sigma_norm = 0.0;  // g-norm of varpi + sigma
};

ConstraintQuantities constraint_quantities(const PointData& data);

struct RigidityResidual {
  double gauss = 0.0;       // |R_ijkl + p_ik p_jl - p_il p_jk|
  double codazzi = 0.0;     // |nabla_i p_jk - nabla_j p_ik|
  double antisymmetry = 0.0;  // |nabla^j (p_ij - p_ji)|
};

RigidityResidual rigidity_residual(const PointData& data);

/// Coordinate covariant derivative nabla_c p_ab (frame p converted to
/// coordinate components), returned in frame components [c][a][b].
std::array<Mat3<double>, 3> covariant_derivative_p(const PointData& data);

}  // namespace charges
