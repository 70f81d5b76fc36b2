#include <benchmark/benchmark.h>

#include <vector>

#include "rhk/fractional_calc.hpp"
#include "rhk/hawkes.hpp"
#include "rhk/kernels.hpp"
#include "rhk/rng.hpp"
#include "rhk/scaling.hpp"
#include "rhk/special_fn.hpp"
#include "rhk/volterra.hpp"

namespace {

void BM_PhiloxU64(benchmark::State& state) {
  rhk::RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_PhiloxU64);

void BM_NormalDraw(benchmark::State& state) {
  rhk::RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_NormalDraw);

void BM_MittagLefflerSeries(benchmark::State& state) {
  double z = -0.1 * static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(rhk::ml_eval({0.6, 0.6, z, 1e-10}));
}
BENCHMARK(BM_MittagLefflerSeries)->Arg(5)->Arg(50);

void BM_MittagLefflerAsymptotic(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(rhk::ml_eval({0.6, 0.6, -300.0, 1e-10}));
}
BENCHMARK(BM_MittagLefflerAsymptotic);

void BM_KernelSample(benchmark::State& state) {
  rhk::KernelSpec k{rhk::KernelFamily::ShiftedPareto, 0.6};
  rhk::RngStream rng(2, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(rhk::sample_delay(k, rng.uniform01()));
}
BENCHMARK(BM_KernelSample);

void BM_FastCdf(benchmark::State& state) {
  rhk::FastCdf fast(rhk::KernelSpec{rhk::KernelFamily::ShiftedPareto, 0.6});
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fast(x));
    x += 0.1;
    if (x > 1e6) x = 1.0;
  }
}
BENCHMARK(BM_FastCdf);

void BM_HawkesCluster(benchmark::State& state) {
  rhk::HawkesParams p;
  p.mu = 1.0;
  p.a = 0.9;
  p.kernel = {rhk::KernelFamily::ShiftedPareto, 0.6};
  p.horizon = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  std::size_t events = 0;
  for (auto _ : state) events += rhk::simulate_cluster(p, seed++).count();
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_HawkesCluster)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_HawkesThinning(benchmark::State& state) {
  rhk::HawkesParams p;
  p.mu = 1.0;
  p.a = 0.9;
  p.kernel = {rhk::KernelFamily::ShiftedPareto, 0.6};
  p.horizon = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  std::size_t events = 0;
  for (auto _ : state) events += rhk::simulate_thinning(p, seed++).count();
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_HawkesThinning)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_CompensatorGrid(benchmark::State& state) {
  rhk::KernelSpec k{rhk::KernelFamily::ShiftedPareto, 0.6};
  rhk::ScalingRegime reg = rhk::make_regime(0.6, 1.0, 1.0, 0.6, 1e4);
  rhk::HawkesParams hp = rhk::hawkes_params(reg, k);
  rhk::EventRecord rec = rhk::simulate_cluster(hp, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(rhk::rescale_paths(rec, reg, 1000));
  state.SetItemsProcessed(
      static_cast<std::int64_t>(state.iterations() * rec.count() * 1000));
}
BENCHMARK(BM_CompensatorGrid)->Unit(benchmark::kMillisecond);

void BM_RlIntegral(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  rhk::FracKernelParams p{0.6, 1.0};
  rhk::GridFn f = rhk::grid_f_frac(p, n);
  for (auto _ : state) benchmark::DoNotOptimize(rhk::rl_integral(f, 0.3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RlIntegral)->Range(512, 4096)->Complexity()->Unit(benchmark::kMillisecond);

void BM_VolterraPath(benchmark::State& state) {
  rhk::LimitParams lp;
  lp.alpha = 0.75;
  lp.lambda = 1.0;
  lp.mu_star = 1.0;
  lp.n = static_cast<std::size_t>(state.range(0));
  lp.seed = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhk::simulate_Y(lp));
    ++lp.path_index;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolterraPath)->Range(256, 2048)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SampleJT(benchmark::State& state) {
  rhk::KernelSpec k{rhk::KernelFamily::ShiftedPareto, 0.6};
  rhk::ScalingRegime reg = rhk::make_regime(0.6, 1.0, 1.0, 0.6, 1e4);
  for (auto _ : state)
    benchmark::DoNotOptimize(rhk::sample_JT(reg, k, 5, 10000));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleJT)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
