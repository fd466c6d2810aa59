#include <benchmark/benchmark.h>

#include "d2dmatch/generators.hpp"
#include "d2dmatch/greedy.hpp"

using namespace d2d;

namespace {
const WeightModel k2 = WeightModel::uniform({1.0, 2.0});
}

static void BM_GreedyLine(benchmark::State& state) {
  const auto g = generate_line(static_cast<int>(state.range(0)), k2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_match(g).total_weight);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyLine)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_GreedyGrid(benchmark::State& state) {
  const auto g = generate_grid2d(static_cast<int>(state.range(0)), k2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_match(g).total_weight);
  }
  state.SetItemsProcessed(state.iterations() * g.num_nodes());
}
BENCHMARK(BM_GreedyGrid)->Arg(100)->Arg(316)->Arg(1000);

static void BM_GreedyGnp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = generate_gnp(n, 0.5 / n, k2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_match(g).total_weight);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GreedyGnp)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_GreedyMultiunit(benchmark::State& state) {
  auto g = generate_line(static_cast<int>(state.range(0)), k2, 1);
  g = with_random_quantities(g, std::vector<int>{1, 2}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_match_multiunit(g).total_weight);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyMultiunit)->Arg(10000)->Arg(100000);

static void BM_GenerateGeometric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_geometric(n, 1000.0, 100.0, k2, ++seed).num_edges());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenerateGeometric)->Arg(1000)->Arg(10000);
