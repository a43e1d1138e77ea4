#include <cmath>
#include <numbers>

#include <doctest.h>

#include "charges/errors.hpp"
#include "charges/geometry.hpp"
#include "charges/spacetimes.hpp"

using namespace charges;

namespace {

constexpr double kPi = std::numbers::pi;

double max_g_dev(const PointData& d, const Mat3<double>& target) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(value_of(d.g[i][j]) - target[i][j]));
  return m;
}

double max_p(const PointData& d, double diag) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(value_of(d.p[i][j]) - (i == j ? diag : 0.0)));
  return m;
}

const Mat3<double> kId{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

// t = 2r: timelike everywhere away from the origin.
struct SteepCone : EmbeddingModel<SteepCone> {
  Chart3 source_chart() const override { return Chart3::Polar; }
  Chart target_chart() const override { return Chart::StaticPolar; }
  std::string name() const override { return "steep cone"; }
  template <class T>
  Vec4<T> map(const Vec3<T>& y) const {
    return {y[0] * 2.0, y[0], y[1], y[2]};
  }
};

}  // namespace

TEST_SUITE("geometry_engine") {
  TEST_CASE("flat t = const slice gives the Euclidean metric and vanishing h") {
    const auto data = pullback_initial_data(minkowski(Chart::Cartesian),
                                            constant_time_slice(Chart3::Cartesian, Chart::Cartesian), Frame{});
    for (const Vec3<double> y : {Vec3<double>{1.0, 2.0, -3.0}, Vec3<double>{-5.0, 0.5, 0.25}}) {
      const PointData d = data(y);
      CHECK(max_g_dev(d, kId) <= 1e-15);
      CHECK(max_p(d, 0.0) <= 1e-15);
    }
  }

  TEST_CASE("static Schwarzschild slice is time symmetric and vacuum") {
    const auto data = pullback_initial_data(schwarzschild(1.0, Chart::StaticPolar),
                                            constant_time_slice(Chart3::Cartesian, Chart::StaticPolar), Frame{});
    const PointData d = data({7.0, -4.0, 3.0});
    CHECK(max_p(d, 0.0) <= 1e-15);
    const auto q = constraint_quantities(d);
    CHECK(std::abs(q.mu) <= 1e-7);
    CHECK(q.varpi_norm <= 1e-7);
    CHECK(q.varpi_sigma_norm <= 1e-7);
  }

  TEST_CASE("hyperboloid has g = h = identity in the hyperbolic frame") {
    const auto data = pullback_initial_data(minkowski(Chart::StaticPolar), hyperboloid_embedding(Chart::StaticPolar),
                                            Frame{FrameKind::Hyperbolic});
    for (const Vec3<double> y : {Vec3<double>{0.5, 1.0, 2.0}, Vec3<double>{30.0, 2.5, 5.0}}) {
      const PointData d = data(y);
      CHECK(max_g_dev(d, kId) <= 1e-10);
      CHECK(max_p(d, 1.0) <= 1e-10);
      // constant curvature -1: R = -6
      CHECK(std::abs(curvature3(d).scalar + 6.0) <= 1e-8);
      const auto rig = rigidity_residual(d);
      CHECK(rig.gauss <= 1e-7);
      CHECK(rig.codazzi <= 1e-7);
      CHECK(rig.antisymmetry <= 1e-7);
    }
  }

  TEST_CASE("symmetric p has zero antisymmetry current") {
    const auto data = pullback_initial_data(kerr({1.0, 0.6}), constant_time_slice(Chart3::Cartesian, Chart::StaticPolar),
                                            Frame{});
    const auto q = constraint_quantities(data({6.0, 2.0, 1.0}));
    for (double s : q.sigma) CHECK(s == 0.0);
  }

  TEST_CASE("Christoffel symbols of flat polar coordinates") {
    const auto g = christoffel4(*minkowski(Chart::StaticPolar), {Chart::StaticPolar, {0.0, 3.0, 0.7, 0.2}});
    CHECK(g[1][2][2] == doctest::Approx(-3.0));
    CHECK(g[2][1][2] == doctest::Approx(1.0 / 3.0));
    CHECK(g[3][2][3] == doctest::Approx(std::cos(0.7) / std::sin(0.7)));
  }

  TEST_CASE("non-spacelike embedding is rejected") {
    const auto data = pullback_initial_data(minkowski(Chart::StaticPolar), std::make_shared<SteepCone>(),
                                            Frame{FrameKind::Hyperbolic});
    CHECK_THROWS_AS(data({2.0, kPi / 2.0, 0.0}), DegenerateError);
  }

  TEST_CASE("frame scale enters quadratically in g") {
    Frame f{FrameKind::Euclidean, {2.0, 1.0, 1.0}};
    const auto data = pullback_initial_data(minkowski(Chart::Cartesian),
                                            constant_time_slice(Chart3::Cartesian, Chart::Cartesian), f);
    CHECK(value_of(data({1.0, 1.0, 1.0}).g[0][0]) == doctest::Approx(4.0));
  }
}
