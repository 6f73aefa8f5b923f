#include <benchmark/benchmark.h>
#include <cmath>

#include "sshrabi/ground_state.hpp"

namespace {

sshrabi::ChainParams dimerized() { return sshrabi::sample_chain_params().with_u(0.12); }

void BM_EnergyElliptic(benchmark::State& state) {
  const auto p = dimerized();
  for (auto _ : state) benchmark::DoNotOptimize(sshrabi::energy_elliptic(p));
}
BENCHMARK(BM_EnergyElliptic);

void BM_EnergyQuadrature(benchmark::State& state) {
  const auto p = dimerized();
  sshrabi::QuadratureOptions opts;
  opts.relative_tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sshrabi::energy_quadrature(p, opts));
}
BENCHMARK(BM_EnergyQuadrature)->Arg(6)->Arg(10)->Arg(13);

void BM_EnergyExpansion(benchmark::State& state) {
  const auto p = sshrabi::sample_chain_params().with_u(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(sshrabi::energy_expansion(p));
}
BENCHMARK(BM_EnergyExpansion);

void BM_MinimizeDimerization(benchmark::State& state) {
  const auto p = sshrabi::sample_chain_params();
  for (auto _ : state) benchmark::DoNotOptimize(sshrabi::minimize_dimerization(p).u0);
}
BENCHMARK(BM_MinimizeDimerization)->Unit(benchmark::kMicrosecond);

}  // namespace
