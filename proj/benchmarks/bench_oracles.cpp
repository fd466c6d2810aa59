#include <benchmark/benchmark.h>

#include "d2dmatch/bounds.hpp"
#include "d2dmatch/exact.hpp"
#include "d2dmatch/generators.hpp"
#include "d2dmatch/rng.hpp"

using namespace d2d;

namespace {
const WeightModel k2 = WeightModel::uniform({1.0, 2.0});
}

static void BM_PathDp(benchmark::State& state) {
  const auto g = generate_line(static_cast<int>(state.range(0)), k2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_path_dp(g).total_weight);
  }
}
BENCHMARK(BM_PathDp)->Arg(1000)->Arg(100000);

static void BM_Exhaustive(benchmark::State& state) {
  // random connected graph at the size cap
  Rng rng(5);
  std::vector<Edge> edges;
  const int n = 12;
  for (int v = 1; v < n; ++v)
    edges.push_back(Edge{static_cast<std::int32_t>(rng.bounded(v)), v,
                         rng.bernoulli(0.5) ? 1.0 : 2.0, -1});
  int added = 0;
  while (added < 11) {
    const int u = static_cast<int>(rng.bounded(n)), v = static_cast<int>(rng.bounded(n));
    if (u == v) continue;
    bool dup = false;
    for (const auto& e : edges) {
      if ((e.u == std::min(u, v)) && (e.v == std::max(u, v))) dup = true;
    }
    if (dup) continue;
    edges.push_back(Edge{static_cast<std::int32_t>(std::min(u, v)),
                         static_cast<std::int32_t>(std::max(u, v)),
                         rng.bernoulli(0.5) ? 1.0 : 2.0, -1});
    ++added;
  }
  const WeightedGraph g(n, std::move(edges));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_exhaustive(g).total_weight);
  }
}
BENCHMARK(BM_Exhaustive);

static void BM_DecompositionBound(benchmark::State& state) {
  const auto g = generate_line(static_cast<int>(state.range(0)), k2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decomposition_bound_instance(g, k2));
  }
}
BENCHMARK(BM_DecompositionBound)->Arg(100000);

static void BM_MultiunitBound(benchmark::State& state) {
  auto g = generate_line(static_cast<int>(state.range(0)), k2, 3);
  g = with_random_quantities(g, std::vector<int>{1, 2}, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiunit_bound(g));
  }
}
BENCHMARK(BM_MultiunitBound)->Arg(100000);
