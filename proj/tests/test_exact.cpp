#include "doctest.h"

#include <stdexcept>

#include "d2dmatch/exact.hpp"
#include "d2dmatch/generators.hpp"
#include "oracles.hpp"

using namespace d2d;

namespace {

WeightedGraph path_graph(std::vector<double> weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i)
    edges.push_back(Edge{static_cast<std::int32_t>(i), static_cast<std::int32_t>(i + 1),
                         weights[i], -1});
  return WeightedGraph(static_cast<int>(weights.size() + 1), std::move(edges));
}

}  // namespace

TEST_CASE("path dp picks the two side edges of the worst-case instance") {
  const auto g = path_graph({1.0, 1.25, 1.0});
  const auto r = optimal_path_dp(g);
  CHECK(r.total_weight == doctest::Approx(2.0));
  REQUIRE(r.matched_edges.has_value());
  REQUIRE(r.matched_edges->size() == 2);
  CHECK((*r.matched_edges)[0] == std::pair<int, int>(0, 1));
  CHECK((*r.matched_edges)[1] == std::pair<int, int>(2, 3));
}

TEST_CASE("path dp on a single edge") {
  const auto r = optimal_path_dp(path_graph({4.5}));
  CHECK(r.total_weight == doctest::Approx(4.5));
  CHECK(r.matched_edges->size() == 1);
}

TEST_CASE("path dp equals exhaustive enumeration on random paths") {
  Rng rng(7);
  const std::vector<double> support{1.0, 1.5, 2.0, 3.0};
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng.bounded(12));
    std::vector<double> w(m);
    for (auto& x : w) x = support[rng.bounded(support.size())];
    const auto g = path_graph(w);
    const auto r = optimal_path_dp(g);
    CHECK(r.total_weight == doctest::Approx(oracle::brute_force_matching(g)).epsilon(1e-12));
    // returned edges form a valid matching achieving the value
    std::vector<char> used(g.num_nodes(), 0);
    double total = 0.0;
    for (auto [u, v] : *r.matched_edges) {
      CHECK(!used[u]);
      CHECK(!used[v]);
      used[u] = used[v] = 1;
      total += w[u];  // path edge (u, u+1) has weight w[u]
    }
    CHECK(total == doctest::Approx(r.total_weight));
  }
}

TEST_CASE("path dp rejects non-paths") {
  const WeightedGraph star(4, {Edge{0, 1, 1, -1}, Edge{0, 2, 1, -1}, Edge{0, 3, 1, -1}});
  CHECK_THROWS_AS(optimal_path_dp(star), std::invalid_argument);
  const WeightedGraph two(4, {Edge{0, 1, 1, -1}, Edge{2, 3, 1, -1}});
  CHECK_THROWS_AS(optimal_path_dp(two), std::invalid_argument);
}

TEST_CASE("tree dp basics") {
  const WeightedGraph star(4, {Edge{0, 1, 1, -1}, Edge{0, 2, 2, -1}, Edge{0, 3, 3, -1}});
  const auto r = optimal_tree_dp(star);
  CHECK(r.total_weight == doctest::Approx(3.0));
  REQUIRE(r.matched_edges->size() == 1);
  CHECK((*r.matched_edges)[0] == std::pair<int, int>(0, 3));

  const auto p = path_graph({1.0, 1.25, 1.0});
  CHECK(optimal_tree_dp(p).total_weight == doctest::Approx(optimal_path_dp(p).total_weight));

  const WeightedGraph tri(3, {Edge{0, 1, 1, -1}, Edge{1, 2, 1, -1}, Edge{0, 2, 1, -1}});
  CHECK_THROWS_AS(optimal_tree_dp(tri), std::invalid_argument);
}

TEST_CASE("tree dp equals exhaustive enumeration on random forests") {
  Rng rng(13);
  const std::vector<double> support{0.5, 1.0, 2.0, 4.0};
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng.bounded(14));
    const auto g = oracle::random_small_graph(n, 0, rng, support);  // spanning tree only
    const auto r = optimal_tree_dp(g);
    CHECK(r.total_weight == doctest::Approx(oracle::brute_force_matching(g)).epsilon(1e-12));
    std::vector<char> used(n, 0);
    for (auto [u, v] : *r.matched_edges) {
      CHECK(!used[u]);
      CHECK(!used[v]);
      used[u] = used[v] = 1;
    }
  }
}

TEST_CASE("exhaustive search on the printed shapes") {
  const WeightedGraph tri(3, {Edge{0, 1, 3, -1}, Edge{1, 2, 2, -1}, Edge{0, 2, 2, -1}});
  CHECK(optimal_exhaustive(tri).total_weight == doctest::Approx(3.0));

  const WeightedGraph cyc(4, {Edge{0, 1, 1, -1}, Edge{1, 2, 2, -1}, Edge{2, 3, 1, -1},
                              Edge{0, 3, 2, -1}});
  CHECK(optimal_exhaustive(cyc).total_weight == doctest::Approx(4.0));

  const WeightedGraph empty(4, {});
  CHECK(optimal_exhaustive(empty).total_weight == 0.0);

  const auto big = generate_gnp(30, 0.2, WeightModel::uniform({1.0, 2.0}), 3);
  if (big.num_edges() > 22) {
    CHECK_THROWS_AS(optimal_exhaustive(big), std::invalid_argument);
  }
}

TEST_CASE("exhaustive equals enumeration on random graphs") {
  Rng rng(23);
  const std::vector<double> support{1.0, 1.5, 2.5, 4.0};
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(7));
    const auto g = oracle::random_small_graph(n, 2 + static_cast<int>(rng.bounded(6)), rng,
                                              support);
    if (g.num_edges() > 16) continue;
    const auto r = optimal_exhaustive(g);
    CHECK(r.total_weight == doctest::Approx(oracle::brute_force_matching(g)).epsilon(1e-12));
  }
}

TEST_CASE("multi-unit exhaustive allocation") {
  const WeightedGraph single(2, {Edge{0, 1, 1.5, -1}}, std::vector<int>{2, 3});
  CHECK(optimal_multiunit_exhaustive(single).total_weight == doctest::Approx(3.0));

  Rng rng(31);
  const std::vector<double> support{1.0, 2.0};
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(4));
    auto base = oracle::random_small_graph(n, static_cast<int>(rng.bounded(3)), rng, support);
    if (base.num_edges() > 8) continue;
    std::vector<int> qs(n);
    int total = 0;
    for (auto& q : qs) {
      q = 1 + static_cast<int>(rng.bounded(2));
      total += q;
    }
    if (total > 18) continue;
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    const WeightedGraph g(n, std::move(edges), std::move(qs));
    CHECK(optimal_multiunit_exhaustive(g).total_weight ==
          doctest::Approx(oracle::brute_force_multiunit(g)).epsilon(1e-12));
  }
}
