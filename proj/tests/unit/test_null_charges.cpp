#include <cmath>

#include <doctest.h>

#include "charges/adm_charges.hpp"
#include "charges/bondi_radiation.hpp"
#include "charges/null_charges.hpp"
#include "charges/spacetimes.hpp"

using namespace charges;

namespace {

InitialData retarded_hyperboloid() {
  return pullback_initial_data(minkowski(Chart::Retarded), hyperboloid_embedding(Chart::Retarded),
                               Frame{FrameKind::Hyperbolic});
}

const std::vector<double> kLadder{10.0, 20.0, 40.0, 80.0};

}  // namespace

TEST_SUITE("null_charges") {
  TEST_CASE("hyperboloid deviations and charges vanish") {
    const auto grid = build_grid(12, 24);
    const InitialData h = retarded_hyperboloid();
    const NullDeviation dev = deviation(h({5.0, 1.0, 2.0}));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(value_of(dev.a[i][j])) <= 1e-14);
        CHECK(std::abs(value_of(dev.b[i][j])) <= 1e-14);
      }
    const NullCharges nc = null_energy_momentum(h, kLadder, grid);
    for (int nu = 0; nu < 4; ++nu) {
      CHECK(std::abs(nc.energy[nu].limit) <= 1e-12);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(nc.momentum[nu][k].limit) <= 1e-12);
    }
    CHECK(nc.gate_passed);
  }

  TEST_CASE("background connection is metric compatible") {
    for (const Vec3<double> y : {Vec3<double>{0.7, 0.4, 1.0}, Vec3<double>{25.0, 2.0, 4.0}}) {
      const FrameConnection g = background_connection(y);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) CHECK(g[k][i][j] == doctest::Approx(-g[j][i][k]).epsilon(1e-14));
    }
  }

  TEST_CASE("positive mass margin arithmetic") {
    CHECK(check_pmt_null({0.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(check_pmt_null({5.0, 3.0, 0.0, 0.0}) == 2.0);
    CHECK(check_pmt_null({5.0, 0.0, 3.0, 4.0}) == 0.0);
  }

  TEST_CASE("hyperboloid satisfies DEC with zero margin") {
    const auto grid = build_grid(4, 8);
    const auto pts = sphere_points(std::vector<double>{2.0, 20.0}, grid, Chart3::Polar);
    for (double m : check_dec_null(retarded_hyperboloid(), pts)) CHECK(std::abs(m) <= 1e-7);
  }

  TEST_CASE("Schwarzschild-Bondi slice decays at order three") {
    const auto grid = build_grid(12, 24);
    const InitialData d = pulled_back_slice_data(schwarzschild_expansion(1.0), SliceSpec{}, 5.0);
    const DecayFit a11 = estimate_decay_order(d, "a11", kLadder, grid);
    CHECK(a11.exponent == doctest::Approx(3.0).epsilon(0.1 / 3.0));
    const auto all = estimate_decay_orders(d, kLadder, grid);
    CHECK(all.size() == 15);  // six symmetric a components, nine b components
  }

  TEST_CASE("serial and parallel charges agree bitwise") {
    const auto grid = build_grid(12, 24);
    const InitialData d = pulled_back_slice_data(schwarzschild_expansion(1.0), SliceSpec{}, 5.0);
    NullChargeOptions serial;
    serial.parallel = false;
    const NullCharges a = null_energy_momentum(d, kLadder, grid);
    const NullCharges b = null_energy_momentum(d, kLadder, grid, serial);
    for (int nu = 0; nu < 4; ++nu) CHECK(a.combination[nu].limit == b.combination[nu].limit);
    CHECK(a.tau_hat == b.tau_hat);
  }

  TEST_CASE("Schwarzschild-Bondi positive mass margin") {
    const auto grid = build_grid(16, 32);
    const InitialData d = pulled_back_slice_data(schwarzschild_expansion(1.0), SliceSpec{}, 5.0);
    const NullCharges nc = null_energy_momentum(d, kLadder, grid);
    CHECK(nc.gate_passed);
    CHECK(check_pmt_null(nc) >= -1e-4);
  }
}
