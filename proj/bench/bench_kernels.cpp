// Parallel kernels against their serial references on identical inputs.

#include "ramcalc/belyi.hpp"
#include "ramcalc/sunit.hpp"

#include <benchmark/benchmark.h>

using namespace ramcalc;

namespace {

SearchParams search_params(long box) {
  SearchParams p;
  p.k = 5;
  p.primes = {2, 3, 5, 7};
  p.box = box;
  return p;
}

const std::vector<std::uint64_t> kPrimes{2, 3, 5, 7, 11, 13};

void BM_SearchSerial(benchmark::State& state) {
  const auto p = search_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_smooth_tuples_serial(p));
}

void BM_SearchParallel(benchmark::State& state) {
  const auto p = search_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_smooth_tuples(p));
}

void BM_UnitSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(unit_equation_solutions_serial(kPrimes, state.range(0)));
}

void BM_UnitParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(unit_equation_solutions(kPrimes, state.range(0)));
}

void BM_Prop24Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prop24_pairs_serial(kPrimes, state.range(0)));
}

void BM_Prop24Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prop24_pairs(kPrimes, state.range(0)));
}

}  // namespace

BENCHMARK(BM_SearchSerial)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchParallel)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UnitSerial)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UnitParallel)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Prop24Serial)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Prop24Parallel)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
