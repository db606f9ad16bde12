#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "ouarea/area.hpp"
#include "ouarea/covariance.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/holder.hpp"
#include "ouarea/spectrum.hpp"
#include "ouarea/tensor.hpp"

using namespace ouarea;

namespace {

PathGrid path_at(unsigned level, double hurst = 0.5) {
  return sample_qfbm(CovarianceSpec::power_law(4, 2.0), hurst, level, 1.0, 2024);
}

void BM_AreaRecursion(benchmark::State& state) {
  const PathGrid p = path_at(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(area_component(p, 39.47, 0, 1, {0, p.cell_count()}));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(p.cell_count()));
}
BENCHMARK(BM_AreaRecursion)->DenseRange(6, 14, 2)->Complexity(benchmark::oN);

void BM_AreaNaive(benchmark::State& state) {
  const PathGrid p = path_at(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::naive_area(p, 39.47, 0, 1, 0, p.cell_count()));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(p.cell_count()));
}
BENCHMARK(BM_AreaNaive)->DenseRange(6, 10, 2)->Complexity(benchmark::oNSquared);

void BM_ScaledTensor(benchmark::State& state) {
  const PathGrid p = path_at(static_cast<unsigned>(state.range(0)));
  const auto spec = SpectrumConfig::dirichlet_laplacian(16, 0.3);
  const auto cov = CovarianceSpec::power_law(4, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(hs_norm(scaled_tensor(p, spec, cov, {0, p.cell_count()})));
}
BENCHMARK(BM_ScaledTensor)->Arg(8)->Arg(12);

void BM_FbmSample(benchmark::State& state) {
  const double hurst = state.range(1) / 100.0;
  const FbmSampler sampler(hurst, static_cast<unsigned>(state.range(0)), 1.0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(++seed));
}
BENCHMARK(BM_FbmSample)->Args({10, 40})->Args({14, 40})->Args({10, 50})->Args({14, 50});

void BM_HolderSeminorm(benchmark::State& state) {
  const PathGrid p = path_at(static_cast<unsigned>(state.range(0)), 0.4);
  const auto values = p.mode_values(0);
  for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(values, p.step(), 0.35));
}
BENCHMARK(BM_HolderSeminorm)->Arg(8)->Arg(10)->Arg(12)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
