#include <benchmark/benchmark.h>

#include "d2dmatch/analytics.hpp"

using namespace d2d;

static void BM_TreeFixedPoint(benchmark::State& state) {
  const auto model = WeightModel::uniform_spread(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tree_fixed_point(5.0, model).y[0]);
  }
}
BENCHMARK(BM_TreeFixedPoint)->Arg(2)->Arg(4)->Arg(8);

static void BM_RootWeightAnalytic(benchmark::State& state) {
  const auto model = WeightModel::uniform({1.0, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_root_weight(0.9, model, RootWeightMode::Analytic).value);
  }
}
BENCHMARK(BM_RootWeightAnalytic);

static void BM_GridBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pr_lower_bound_grid(0.5));
  }
}
BENCHMARK(BM_GridBound);
