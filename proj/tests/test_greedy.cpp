#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "d2dmatch/generators.hpp"
#include "d2dmatch/greedy.hpp"
#include "oracles.hpp"

using namespace d2d;

namespace {

WeightedGraph path_graph(std::initializer_list<double> weights) {
  std::vector<Edge> edges;
  int i = 0;
  for (double w : weights) {
    edges.push_back(Edge{i, i + 1, w, -1});
    ++i;
  }
  return WeightedGraph(i + 1, std::move(edges));
}

void check_valid_matching(const WeightedGraph& g, const MatchingOutcome& m) {
  std::vector<int> load(g.num_nodes(), 0);
  for (const auto& e : m.matched_edges) {
    CHECK(e.units == 1);
    load[e.u] += 1;
    load[e.v] += 1;
  }
  for (int i = 0; i < g.num_nodes(); ++i) CHECK(load[i] <= 1);
  // local maximality: no edge with both endpoints unmatched
  for (const auto& e : g.edges()) {
    CHECK((m.partner[e.u] != -1 || m.partner[e.v] != -1));
  }
  CHECK(m.total_weight == doctest::Approx(m.recompute_total()).epsilon(1e-12));
}

}  // namespace

TEST_CASE("three-edge path with a slightly heavier middle edge") {
  const double eps = 0.25;
  const auto g = path_graph({1.0, 1.0 + eps, 1.0});
  const auto m = greedy_match(g);
  REQUIRE(m.matched_edges.size() == 1);
  CHECK(m.matched_edges[0].u == 1);
  CHECK(m.matched_edges[0].v == 2);
  CHECK(m.total_weight == doctest::Approx(1.0 + eps));
}

TEST_CASE("single edge matches in one round") {
  const auto g = path_graph({3.25});
  const auto m = greedy_match(g);
  CHECK(m.total_weight == doctest::Approx(3.25));
  CHECK(m.rounds == 1);
  CHECK(m.matched_edges.size() == 1);
}

TEST_CASE("equal weights on a 4-node path with left priority") {
  const auto g = path_graph({2.0, 2.0, 2.0});
  const auto m = greedy_match(g, TieRule::LowId);
  REQUIRE(m.matched_edges.size() == 2);
  CHECK(m.matched_edges[0].u == 0);
  CHECK(m.matched_edges[0].v == 1);
  CHECK(m.matched_edges[1].u == 2);
  CHECK(m.matched_edges[1].v == 3);
}

TEST_CASE("empty graph terminates immediately") {
  const WeightedGraph g(5, {});
  const auto m = greedy_match(g);
  CHECK(m.rounds == 0);
  CHECK(m.total_weight == 0.0);
  CHECK(m.matched_edges.empty());
}

TEST_CASE("matching validity, maximality and the half-optimal guarantee") {
  Rng rng(2024);
  const std::vector<double> support{1.0, 2.0, 5.0};
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(8));
    const int extra = static_cast<int>(rng.bounded(5));
    const auto g = oracle::random_small_graph(n, extra, rng, support);
    const auto m = greedy_match(g, rep % 2 ? TieRule::HighId : TieRule::LowId);
    check_valid_matching(g, m);
    const double opt = oracle::brute_force_matching(g);
    CHECK(m.total_weight >= 0.5 * opt - 1e-12);
    CHECK(m.total_weight <= opt + 1e-12);
  }
}

TEST_CASE("identical inputs give identical outcomes and rounds") {
  const auto g = generate_gnp(2000, 2.0 / 2000, WeightModel::uniform({1.0, 2.0}), 99);
  const auto a = greedy_match(g);
  const auto b = greedy_match(g);
  CHECK(a.total_weight == b.total_weight);
  CHECK(a.rounds == b.rounds);
  REQUIRE(a.matched_edges.size() == b.matched_edges.size());
  for (std::size_t i = 0; i < a.matched_edges.size(); ++i) {
    CHECK(a.matched_edges[i].u == b.matched_edges[i].u);
    CHECK(a.matched_edges[i].v == b.matched_edges[i].v);
  }
}

TEST_CASE("outcome does not depend on the worker count") {
  const auto line = generate_line(20000, WeightModel::uniform({1.0, 2.0}), 5);
  const auto a = greedy_match(line, TieRule::HighId, 1);
  const auto b = greedy_match(line, TieRule::HighId, 4);
  CHECK(a.total_weight == b.total_weight);
  CHECK(a.rounds == b.rounds);
  REQUIRE(a.matched_edges.size() == b.matched_edges.size());
  for (std::size_t i = 0; i < a.matched_edges.size(); ++i) {
    CHECK(a.matched_edges[i].u == b.matched_edges[i].u);
  }

  const auto gq = with_random_quantities(line, std::vector<int>{1, 2, 3}, 8);
  const auto ma = greedy_match_multiunit(gq, TieRule::HighId, 1);
  const auto mb = greedy_match_multiunit(gq, TieRule::HighId, 4);
  CHECK(ma.total_weight == mb.total_weight);
  CHECK(ma.rounds == mb.rounds);
}

TEST_CASE("round trace accounts for every proposal and match") {
  const auto g = generate_line(500, WeightModel::uniform({1.0, 2.0}), 21);
  const auto m = greedy_match(g);
  CHECK(static_cast<int>(m.trace.size()) == m.rounds);
  std::int64_t matches = 0;
  for (const auto& r : m.trace) {
    CHECK(r.proposals > 0);
    matches += r.matches;
  }
  CHECK(matches == static_cast<std::int64_t>(m.matched_edges.size()));
}

TEST_CASE("multi-unit with unit quantities degenerates to the single-unit run") {
  auto g = generate_line(1000, WeightModel::uniform({1.0, 2.0}), 31);
  g = with_random_quantities(g, std::vector<int>{1}, 1);
  const auto a = greedy_match(g);
  const auto b = greedy_match_multiunit(g);
  CHECK(a.total_weight == b.total_weight);
  CHECK(a.rounds == b.rounds);
  REQUIRE(a.matched_edges.size() == b.matched_edges.size());
  for (std::size_t i = 0; i < a.matched_edges.size(); ++i) {
    CHECK(a.matched_edges[i].u == b.matched_edges[i].u);
    CHECK(a.matched_edges[i].v == b.matched_edges[i].v);
    CHECK(b.matched_edges[i].units == 1);
  }
}

TEST_CASE("multi-unit single edge transfers the minimum quantity") {
  const WeightedGraph g(2, {Edge{0, 1, 1.5, -1}}, std::vector<int>{2, 3});
  const auto m = greedy_match_multiunit(g);
  REQUIRE(m.matched_edges.size() == 1);
  CHECK(m.matched_edges[0].units == 2);
  CHECK(m.total_weight == doctest::Approx(3.0));
}

TEST_CASE("multi-unit two-round trace on a 3-node path") {
  const WeightedGraph g(3, {Edge{0, 1, 2.0, -1}, Edge{1, 2, 2.0, -1}},
                        std::vector<int>{1, 2, 1});
  const auto m = greedy_match_multiunit(g, TieRule::LowId);
  REQUIRE(m.matched_edges.size() == 2);
  CHECK(m.matched_edges[0].units == 1);
  CHECK(m.matched_edges[1].units == 1);
  CHECK(m.total_weight == doctest::Approx(4.0));
  CHECK(m.rounds == 2);
}

TEST_CASE("multi-unit requires quantities and respects capacities") {
  const auto g = generate_line(50, WeightModel::uniform({1.0, 2.0}), 2);
  CHECK_THROWS_AS(greedy_match_multiunit(g), std::invalid_argument);

  Rng rng(77);
  const std::vector<double> support{1.0, 2.0, 3.0};
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(6));
    auto base = oracle::random_small_graph(n, static_cast<int>(rng.bounded(4)), rng, support);
    std::vector<int> qs(n);
    for (auto& q : qs) q = 1 + static_cast<int>(rng.bounded(3));
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    const WeightedGraph g2(n, std::move(edges), std::move(qs));
    const auto m = greedy_match_multiunit(g2);
    std::vector<int> load(n, 0);
    for (const auto& e : m.matched_edges) {
      CHECK(e.units >= 1);
      load[e.u] += e.units;
      load[e.v] += e.units;
    }
    for (int i = 0; i < n; ++i) {
      CHECK(load[i] <= g2.quantity(i));
      CHECK(load[i] == m.allocated[i]);
    }
    CHECK(m.total_weight == doctest::Approx(m.recompute_total()));
  }
}

TEST_CASE("failure knockout") {
  const auto model = WeightModel::uniform({1.0, 2.0});
  const auto g = generate_geometric(400, 500.0, 150.0, model, 12);

  const auto base = greedy_match(g);
  const auto none = greedy_with_failures(g, FailureParams{0.0, 0.0, 150.0}, 4);
  CHECK(none.total_weight == doctest::Approx(base.total_weight));

  const auto all = greedy_with_failures(g, FailureParams{1e9, 0.0, 150.0}, 4);
  CHECK(all.total_weight == 0.0);
  CHECK(all.matched_edges.empty());

  const auto some = greedy_with_failures(g, FailureParams{0.002, 0.0, 150.0}, 4);
  CHECK(some.total_weight <= base.total_weight);
  const auto again = greedy_with_failures(g, FailureParams{0.002, 0.0, 150.0}, 4);
  CHECK(some.total_weight == again.total_weight);

  const auto line = generate_line(10, model, 3);
  CHECK_THROWS_AS(greedy_with_failures(line, FailureParams{0.1, 0.0, 1.0}, 1),
                  std::invalid_argument);
}

TEST_CASE("interference counts midpoint neighbors") {
  // two parallel matched pairs with nearby midpoints and one far away
  std::vector<Edge> edges{Edge{0, 1, 5.0, -1}, Edge{2, 3, 5.0, -1}, Edge{4, 5, 5.0, -1}};
  std::vector<Point> coords{{0, 0},    {10, 0},    {0, 5},     {10, 5},
                            {1000, 0}, {1010, 0}};
  const WeightedGraph g(6, std::move(edges), std::nullopt, std::move(coords));
  // deltas chosen so that failure is certain with one interferer
  const auto m = greedy_with_failures(g, FailureParams{0.0, 1.0, 50.0}, 9);
  // pairs (0,1) and (2,3) interfere (midpoints 5 apart), the third survives
  REQUIRE(m.matched_edges.size() == 1);
  CHECK(m.matched_edges[0].u == 4);
}
