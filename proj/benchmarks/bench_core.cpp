#include <vector>

#include <benchmark/benchmark.h>

#include "noisyemo/indicators.hpp"
#include "noisyemo/landscapes.hpp"
#include "noisyemo/optimizers.hpp"
#include "noisyemo/pareto.hpp"

namespace {

using namespace noisyemo;

std::vector<ObjectiveVector> random_front(std::size_t k, std::size_t m, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<ObjectiveVector> pts;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> v(m);
    for (auto& x : v) x = rng.uniform();
    pts.emplace_back(v, Sense::minimize);
  }
  return pts;
}

void BM_Hypervolume2D(benchmark::State& state) {
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), 2, 1);
  const auto ref = minimize({1.1, 1.1});
  for (auto _ : state) benchmark::DoNotOptimize(hypervolume(pts, ref));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hypervolume2D)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Hypervolume3D(benchmark::State& state) {
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), 3, 2);
  const auto ref = minimize({1.1, 1.1, 1.1});
  for (auto _ : state) benchmark::DoNotOptimize(hypervolume(pts, ref));
}
BENCHMARK(BM_Hypervolume3D)->RangeMultiplier(4)->Range(16, 1024);

void BM_Contributions2D(benchmark::State& state) {
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), 2, 3);
  const auto ref = minimize({1.1, 1.1});
  for (auto _ : state) benchmark::DoNotOptimize(hv_contribution(pts, ref));
}
BENCHMARK(BM_Contributions2D)->Arg(101)->Arg(200);

void BM_NondominatedSort(benchmark::State& state) {
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(nondominated_sort(pts));
}
BENCHMARK(BM_NondominatedSort)->Args({200, 2})->Args({200, 3})->Args({1000, 2});

void BM_GratingEvaluation(benchmark::State& state) {
  const auto spec = LandscapeSpec::grating_study_instance(static_cast<int>(state.range(0)));
  RandomStream rng(5);
  DecisionVector phi(static_cast<std::size_t>(spec.n));
  for (auto& p : phi) p = rng.uniform(0, 6.28);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(spec, phi));
}
BENCHMARK(BM_GratingEvaluation)->Arg(10)->Arg(30)->Arg(80);

void BM_MocmaGeneration(benchmark::State& state) {
  auto cfg = OptimizerConfig::defaults(Algorithm::mo_cma, LandscapeSpec::grating_study_instance(10));
  cfg.seed = 1;
  const RandomStream rng(cfg.seed);
  auto archive = initialize(cfg, rng);
  for (auto _ : state) mocma_step(archive, cfg, rng);
}
BENCHMARK(BM_MocmaGeneration)->Unit(benchmark::kMillisecond);

void BM_SmsemoaIteration(benchmark::State& state) {
  auto cfg = OptimizerConfig::defaults(Algorithm::sms_emoa, LandscapeSpec::grating_study_instance(10));
  cfg.seed = 1;
  const RandomStream rng(cfg.seed);
  auto archive = initialize(cfg, rng);
  for (auto _ : state) smsemoa_step(archive, cfg, rng);
}
BENCHMARK(BM_SmsemoaIteration)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
