#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "sshrabi/fourier.hpp"
#include "sshrabi/rabi.hpp"

namespace {

sshrabi::TubeConfig tube(std::size_t chains, std::size_t points) {
  sshrabi::TubeConfig cfg;
  cfg.n = chains;
  cfg.g = std::numbers::pi;
  cfg.l = 2;
  cfg.grid.points = points;
  cfg.grid.h_min = -16.0;
  cfg.grid.h_max = 16.0;
  cfg.theta = sshrabi::cosine_dispersion(0.0, 1.0, 1.0, 0.5);
  cfg.kappa = sshrabi::cosine_coupling(0.1, 1.0);
  return cfg;
}

void BM_SpectralTransform(benchmark::State& state) {
  sshrabi::WaveGrid grid;
  grid.points = static_cast<std::size_t>(state.range(0));
  const sshrabi::SpectralTransform transform(grid);
  std::vector<sshrabi::cplx> in(grid.points, {1.0, 0.5});
  std::vector<sshrabi::cplx> out(grid.points);
  for (auto _ : state) {
    transform.to_spatial(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SpectralTransform)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_EvolveStep(benchmark::State& state) {
  const auto cfg = tube(static_cast<std::size_t>(state.range(0)), 4096);
  const sshrabi::Propagator prop(cfg);
  auto packet = sshrabi::normalized(sshrabi::build_initial_packet(cfg, sshrabi::gaussian_envelope(0.5, 0.25, 0)));
  const auto step = prop.step_factors(1.0 / 32.0);
  for (auto _ : state) prop.advance(packet, step, state.range(1) != 0);
}
BENCHMARK(BM_EvolveStep)->Args({1, 0})->Args({4, 0})->Args({4, 1})->Args({16, 0});

void BM_Inversion(benchmark::State& state) {
  const auto cfg = tube(4, 4096);
  const auto packet = sshrabi::normalized(sshrabi::build_initial_packet(cfg, sshrabi::gaussian_envelope(0.5, 0.25, 0)));
  for (auto _ : state) benchmark::DoNotOptimize(sshrabi::inversion(packet));
}
BENCHMARK(BM_Inversion);

}  // namespace
