// Serial and OpenMP variants of the hot loops. Thread count follows
// CHARGES_THREADS.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "charges/adm_charges.hpp"
#include "charges/bondi_radiation.hpp"
#include "charges/null_charges.hpp"
#include "charges/spacetimes.hpp"
#include "charges/sphere_grid.hpp"

using namespace charges;

namespace {

const std::vector<double> kLadder{10.0, 20.0, 40.0, 80.0};

double smooth(double th, double ps) { return std::exp(std::sin(th) * std::cos(ps)) * std::cos(3.0 * th); }

void BM_SampleSerial(benchmark::State& state) {
  const auto grid = build_grid(static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(sample_serial(grid, smooth)));
}

void BM_SampleParallel(benchmark::State& state) {
  const auto grid = build_grid(static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(sample(grid, smooth)));
}

void BM_ThetaDerivative(benchmark::State& state) {
  const auto grid = build_grid(static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)));
  const auto f = sample(grid, smooth);
  for (auto _ : state) benchmark::DoNotOptimize(angular_derivative(f, Axis::Theta));
}

void BM_PullbackPoint(benchmark::State& state) {
  const auto metric = bondi_metric(biaxial_expansion(0.1, 1.0), 5.0);
  const auto emb = bondi_slice_embedding(SliceSpec{1.0, {}, {}, 5}, biaxial_expansion(0.1, 1.0));
  const Frame frame{FrameKind::Hyperbolic};
  for (auto _ : state) benchmark::DoNotOptimize(pullback_point(*metric, *emb, frame, {40.0, 1.0, 2.0}));
}

void null_charges_bench(benchmark::State& state, bool parallel) {
  const auto grid = build_grid(16, 32);
  const InitialData data = pulled_back_slice_data(quadrupole_expansion(0.1, 1.0), SliceSpec{}, 5.0);
  NullChargeOptions options;
  options.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(null_energy_momentum(data, kLadder, grid, options));
}

void BM_NullChargesSerial(benchmark::State& state) { null_charges_bench(state, false); }
void BM_NullChargesParallel(benchmark::State& state) { null_charges_bench(state, true); }

void BM_AdmSchwarzschild(benchmark::State& state) {
  const auto grid = build_grid(48, 96);
  const InitialData data = pullback_initial_data(schwarzschild(1.0, Chart::StaticPolar),
                                                 constant_time_slice(Chart3::Cartesian, Chart::StaticPolar), Frame{});
  for (auto _ : state) benchmark::DoNotOptimize(adm_energy_momentum(data, kLadder, grid));
}

void BM_EvolveQuadrupole(benchmark::State& state) {
  const auto grid = build_grid(16, 32);
  const BondiExpansion e = quadrupole_expansion(0.1, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_energy_momentum({1.0, 0.0, 0.0, 0.0}, e, 0.0, 10.0, 0.01, grid));
}

}  // namespace

BENCHMARK(BM_SampleSerial)->Arg(48)->Arg(192);
BENCHMARK(BM_SampleParallel)->Arg(48)->Arg(192);
BENCHMARK(BM_ThetaDerivative)->Arg(48)->Arg(192);
BENCHMARK(BM_PullbackPoint);
BENCHMARK(BM_NullChargesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullChargesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdmSchwarzschild)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveQuadrupole)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
