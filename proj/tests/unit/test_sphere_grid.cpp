#include <cmath>
#include <numbers>

#include <doctest.h>

#include "charges/errors.hpp"
#include "charges/sphere_grid.hpp"

using namespace charges;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const SphereField& f, auto&& exact) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    m = std::max(m, std::abs(f[k] - exact(f.grid()->theta_of(k), f.grid()->psi_of(k))));
  return m;
}

}  // namespace

TEST_SUITE("sphere_grid") {
  TEST_CASE("grid shape and weights") {
    const auto g = build_grid(2, 4);
    CHECK(g->size() == 8);
    double w = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) w += g->weight(i, j);
    CHECK(w == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    for (double th : g->thetas()) {
      CHECK(th > 0.0);
      CHECK(th < kPi);
    }
  }

  TEST_CASE("invalid sizes are rejected") {
    CHECK_THROWS_AS(build_grid(1, 8), ConfigError);
    CHECK_THROWS_AS(build_grid(8, 7), ConfigError);
    CHECK_THROWS_AS(build_grid(8, 2), ConfigError);
  }

  TEST_CASE("integrals of polynomials in cos theta are exact") {
    const auto g = build_grid(8, 16);
    const double c2 = integrate(sample(g, [](double th, double) { return std::cos(th) * std::cos(th); }));
    CHECK(std::abs(c2 - 4.0 * kPi / 3.0) <= 1e-12);
    const double s4 = integrate(sample(g, [](double th, double) { return std::pow(std::sin(th), 4); }));
    CHECK(std::abs(s4 / (4.0 * kPi) - 8.0 / 15.0) <= 1e-12);
  }

  TEST_CASE("non-finite samples are rejected") {
    const auto g = build_grid(4, 8);
    CHECK_THROWS_AS(integrate(SphereField(g, std::nan(""))), NonFiniteError);
  }

  TEST_CASE("multipole projections") {
    const auto g = build_grid(16, 32);
    CHECK(project_multipole(SphereField(g, 1.0), 0) == doctest::Approx(1.0).epsilon(1e-14));
    const auto cz = sample(g, [](double th, double) { return std::cos(th); });
    CHECK(std::abs(project_multipole(cz, 3) - 1.0 / 3.0) <= 1e-14);
    CHECK(std::abs(project_multipole(cz, 1)) <= 1e-15);
    CHECK_THROWS_AS(project_multipole(cz, 4), UsageError);
    CHECK_THROWS_AS(project_multipole(cz, -1), UsageError);
  }

  TEST_CASE("angular derivatives") {
    const auto g = build_grid(32, 64);
    const auto ct = angular_derivative(sample(g, [](double th, double) { return std::cos(th); }), Axis::Theta);
    CHECK(max_abs_diff(ct, [](double th, double) { return -std::sin(th); }) <= 1e-8);
    const auto sp = angular_derivative(sample(g, [](double, double ps) { return std::sin(ps); }), Axis::Psi);
    CHECK(max_abs_diff(sp, [](double, double ps) { return std::cos(ps); }) <= 1e-12);
    const auto k = SphereField(g, 3.5);
    CHECK(max_abs_diff(angular_derivative(k, Axis::Theta), [](double, double) { return 0.0; }) <= 1e-12);
    CHECK(max_abs_diff(angular_derivative(k, Axis::Psi), [](double, double) { return 0.0; }) <= 1e-12);
  }

  TEST_CASE("theta derivative error shrinks under refinement") {
    auto err = [](int n) {
      const auto g = build_grid(n, 2 * n);
      const auto f = sample(g, [](double th, double ps) { return std::sin(th) * std::cos(th) * std::cos(ps); });
      return max_abs_diff(angular_derivative(f, Axis::Theta),
                          [](double th, double ps) { return std::cos(2.0 * th) * std::cos(ps); });
    };
    CHECK(err(32) < err(16) / 16.0);
  }

  TEST_CASE("finite difference weights differentiate polynomials exactly") {
    const std::vector<double> nodes{-0.3, 0.1, 0.4, 0.9, 1.3};
    const auto w = first_derivative_weights(nodes, 0.2);
    double d = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) d += w[q] * std::pow(nodes[q], 4);
    CHECK(std::abs(d - 4.0 * std::pow(0.2, 3)) <= 1e-12);
  }

  TEST_CASE("parallel and serial sampling agree bitwise") {
    const auto g = build_grid(24, 48);
    auto f = [](double th, double ps) { return std::exp(std::sin(th)) * std::cos(3.0 * ps); };
    const auto a = sample(g, f);
    const auto b = sample_serial(g, f);
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
    CHECK(integrate(a) == integrate(b));
  }

  TEST_CASE("field arithmetic") {
    const auto g = build_grid(4, 8);
    const SphereField a(g, 2.0), b(g, 3.0);
    CHECK((a + b)[5] == 5.0);
    CHECK((a - b)[5] == -1.0);
    CHECK((a * b)[5] == 6.0);
    CHECK((0.5 * b)[5] == 1.5);
  }
}
