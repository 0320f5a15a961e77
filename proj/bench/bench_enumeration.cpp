#include <benchmark/benchmark.h>

#include <omp.h>

#include "fairdiv/generators.hpp"
#include "fairdiv/oracles.hpp"

using namespace fairdiv;

namespace {

Instance bench_instance(std::size_t n, std::size_t m) {
  return generate_random(n, m, Distribution::dirichlet_scaled, 7 * n + m);
}

FairnessProperty property_of(int k) {
  switch (k) {
    case 0: return FairnessProperty::ef1();
    case 1: return FairnessProperty::prop1();
    default: return FairnessProperty::alpha_mms(Rational(1, 2));
  }
}

void BM_ConstrainedOptParallel(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), state.range(1));
  const auto prop = property_of(static_cast<int>(state.range(2)));
  const auto profile = mms_profile(inst);
  omp_set_num_threads(static_cast<int>(state.range(3)));
  for (auto _ : state) benchmark::DoNotOptimize(constrained_opt(inst, prop, {}, &profile).welfare);
  omp_set_num_threads(omp_get_num_procs());
}

void BM_ConstrainedOptSerialReference(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), state.range(1));
  const auto prop = property_of(static_cast<int>(state.range(2)));
  const auto profile = mms_profile(inst);
  for (auto _ : state) benchmark::DoNotOptimize(constrained_opt_reference(inst, prop, {}, &profile).welfare);
}

void BM_MmsProfile(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto inst = bench_instance(n, 2 * n);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(mms_profile(inst).mms.size());
  omp_set_num_threads(omp_get_num_procs());
}

}  // namespace

// Args: n, m, property (0 ef1, 1 prop1, 2 half-mms), threads.
BENCHMARK(BM_ConstrainedOptParallel)
    ->ArgsProduct({{4}, {7}, {0, 1, 2}, {1, 4}})
    ->Args({3, 10, 0, 1})
    ->Args({3, 10, 0, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_ConstrainedOptSerialReference)
    ->ArgsProduct({{4}, {7}, {0, 1, 2}})
    ->Args({3, 10, 0})
    ->Unit(benchmark::kMillisecond);
// Args: n (m = 2n), threads.
BENCHMARK(BM_MmsProfile)->ArgsProduct({{9, 16}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
