#include <benchmark/benchmark.h>

#include <memory>

#include "moonshine/denominator.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/replication.hpp"
#include "support/oracles.hpp"

using namespace moonshine;

static void BM_SeriesMul(benchmark::State& state) {
  auto j = oracle::j_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(j * j);
}
BENCHMARK(BM_SeriesMul)->Arg(30)->Arg(100);

static void BM_SeriesLog(benchmark::State& state) {
  auto j = oracle::j_series(static_cast<int>(state.range(0)));
  auto unit = j * PuiseuxSeries::monomial(CycNum(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(unit.log());
}
BENCHMARK(BM_SeriesLog)->Arg(30)->Arg(100);

static void BM_Faber(benchmark::State& state) {
  auto j = oracle::j_series(60);
  for (auto _ : state) benchmark::DoNotOptimize(faber(j, state.range(0)));
}
BENCHMARK(BM_Faber)->Arg(5)->Arg(20);

static void BM_Bivarial(benchmark::State& state) {
  auto j = oracle::j_series(60);
  for (auto _ : state) benchmark::DoNotOptimize(bivarial(j, state.range(0)));
}
BENCHMARK(BM_Bivarial)->Arg(8)->Arg(16);

static void BM_HeckeApply(benchmark::State& state) {
  auto group = std::make_shared<GroupTable const>(GroupTable::cyclic(4));
  auto family = random_family(group, 40, 7);
  for (auto _ : state) benchmark::DoNotOptimize(hecke_apply(family, state.range(0), {1, 2}));
}
BENCHMARK(BM_HeckeApply)->Arg(2)->Arg(6);

static void BM_DenominatorVerify(benchmark::State& state) {
  auto data = ModuleCharacterData::from_series(oracle::j_series(160));
  auto P = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(denominator_verify(data, {1}, P, Rational(P)));
}
BENCHMARK(BM_DenominatorVerify)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
