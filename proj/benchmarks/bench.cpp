#include <benchmark/benchmark.h>

#include "smallpoly/geometry.hpp"
#include "smallpoly/nlp.hpp"
#include "smallpoly/reduced.hpp"

using namespace smallpoly;

namespace {

void BM_AreaDissection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AngleVector a = expand_angles(construct_q(n, 0).params);
  for (auto _ : state) benchmark::DoNotOptimize(area_dissection(a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_AreaDissection)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_ReducedArea(benchmark::State& state) {
  const ReducedParams p = construct_q(static_cast<int>(state.range(0)), 4).params;
  for (auto _ : state) benchmark::DoNotOptimize(reduced_area(p));
}
BENCHMARK(BM_ReducedArea)->Arg(12)->Arg(1000)->Arg(100000);

void BM_ConstructQ(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(construct_q(12, 4).area);
}
BENCHMARK(BM_ConstructQ)->Unit(benchmark::kMillisecond);

void BM_SolveFullNlp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_full_nlp(n).area);
}
BENCHMARK(BM_SolveFullNlp)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
