#include <benchmark/benchmark.h>

#include "wdistill/channels.hpp"
#include "wdistill/experiments.hpp"
#include "wdistill/protocol.hpp"
#include "wdistill/rng.hpp"

namespace {

using namespace wdistill;

DensityMatrix depolarized(double fidelity) {
  return noisy_w(ChannelSpec(ChannelKind::Depolarizing,
                             mu_for_fidelity(ChannelKind::Depolarizing, fidelity)));
}

void BM_RunP(benchmark::State& state) {
  const DensityMatrix rho = depolarized(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(run_P(rho));
}
BENCHMARK(BM_RunP);

void BM_RunPbar(benchmark::State& state) {
  const DensityMatrix rho = depolarized(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(run_Pbar(rho));
}
BENCHMARK(BM_RunPbar);

void BM_DistillStep(benchmark::State& state) {
  const DensityMatrix rho = depolarized(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(distill_step(rho));
}
BENCHMARK(BM_DistillStep);

void BM_DistillRunDepolarized(benchmark::State& state) {
  const DensityMatrix rho = depolarized(0.55);
  for (auto _ : state) benchmark::DoNotOptimize(distill_run(rho));
}
BENCHMARK(BM_DistillRunDepolarized)->Unit(benchmark::kMillisecond);

void BM_HermitianEigenvalues(benchmark::State& state) {
  Rng rng(1);
  const DensityMatrix rho = random_density_hs(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(rho.op()));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(8)->Arg(64);

void BM_ClassifiedRandomSample(benchmark::State& state) {
  RandomStatsConfig config;
  config.target_fidelity_center = 0.5;
  config.seed = 3;
  int i = 0;
  for (auto _ : state) {
    const Trajectory t = distill_run(sample_conditioned_state(config, i++), config.run);
    benchmark::DoNotOptimize(classify_state(t));
  }
}
BENCHMARK(BM_ClassifiedRandomSample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
