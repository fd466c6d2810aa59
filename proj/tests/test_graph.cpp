#include "doctest.h"

#include <stdexcept>

#include "d2dmatch/graph.hpp"

using d2d::Edge;
using d2d::WeightedGraph;

TEST_CASE("graph rejects malformed inputs") {
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 0, 1.0, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 2, 1.0, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 1, 1.0, -1}, Edge{1, 0, 2.0, -1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 1, -1.0, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 1, 1.0, -1}}, std::vector<int>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {Edge{0, 1, 1.0, -1}}, std::vector<int>{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("adjacency is symmetric and consistent with the edge list") {
  const WeightedGraph g(4, {Edge{0, 1, 1.0, 0}, Edge{2, 1, 2.0, 1}, Edge{2, 3, 1.0, 0}});
  CHECK(g.num_edges() == 3);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 1);
  for (int i = 0; i < g.num_nodes(); ++i) {
    const auto nbrs = g.neighbors(i);
    const auto eids = g.incident_edges(i);
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      const auto& e = g.edge(eids[a]);
      CHECK(((e.u == i && e.v == nbrs[a]) || (e.v == i && e.u == nbrs[a])));
      bool back = false;
      for (int j : g.neighbors(nbrs[a])) {
        if (j == i) back = true;
      }
      CHECK(back);
    }
  }
}

TEST_CASE("edges are canonicalized") {
  const WeightedGraph g(3, {Edge{2, 0, 1.5, -1}});
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 2);
}
