#include "d2dmatch/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace d2d {

const char* method_name(OptimalMethod m) {
  switch (m) {
    case OptimalMethod::PathDp: return "path_dp";
    case OptimalMethod::TreeDp: return "tree_dp";
    case OptimalMethod::Exhaustive: return "exhaustive";
    case OptimalMethod::MultiunitExhaustive: return "multiunit_exhaustive";
    case OptimalMethod::DecompositionBound: return "decomposition_bound";
    case OptimalMethod::NeighborMaxBound: return "neighbor_max_bound";
    case OptimalMethod::MultiunitBound: return "multiunit_bound";
  }
  return "?";
}

namespace {

// Node sequence of a path graph, walking from the lowest-id endpoint.
std::vector<int> path_order(const WeightedGraph& g) {
  const int n = g.num_nodes();
  if (n == 1 && g.num_edges() == 0) return {0};
  if (g.num_edges() != n - 1)
    throw std::invalid_argument("path_dp: graph is not a path (edge count)");
  int endpoint = -1;
  int deg1 = 0;
  for (int i = 0; i < n; ++i) {
    const int d = g.degree(i);
    if (d > 2) throw std::invalid_argument("path_dp: graph is not a path (degree > 2)");
    if (d == 1) {
      ++deg1;
      if (endpoint == -1) endpoint = i;
    }
    if (d == 0 && n > 1)
      throw std::invalid_argument("path_dp: graph is not a path (disconnected)");
  }
  if (n >= 2 && deg1 != 2)
    throw std::invalid_argument("path_dp: graph is not a path (endpoints)");
  std::vector<int> order;
  order.reserve(n);
  int prev = -1, at = endpoint;
  while (true) {
    order.push_back(at);
    int next = -1;
    for (int j : g.neighbors(at)) {
      if (j != prev) {
        next = j;
        break;
      }
    }
    if (next == -1) break;
    prev = at;
    at = next;
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("path_dp: graph is not a path (walk incomplete)");
  return order;
}

double edge_weight_between(const WeightedGraph& g, int i, int j) {
  const auto nbrs = g.neighbors(i);
  const auto eids = g.incident_edges(i);
  for (std::size_t a = 0; a < nbrs.size(); ++a) {
    if (nbrs[a] == j) return g.edge(eids[a]).w;
  }
  throw std::logic_error("edge_weight_between: edge not found");
}

}  // namespace

OptimalResult optimal_path_dp(const WeightedGraph& g) {
  const auto order = path_order(g);
  const int n = g.num_nodes();
  std::vector<double> w(n >= 1 ? n - 1 : 0);
  for (int i = 0; i + 1 < n; ++i) w[i] = edge_weight_between(g, order[i], order[i + 1]);

  // M[i] = optimum over the first i nodes of the sequence.
  std::vector<double> m(n + 1, 0.0);
  for (int i = 2; i <= n; ++i) m[i] = std::max(m[i - 1], m[i - 2] + w[i - 2]);

  std::vector<std::pair<int, int>> edges;
  for (int i = n; i >= 2;) {
    if (m[i - 2] + w[i - 2] >= m[i - 1]) {
      edges.emplace_back(std::min(order[i - 2], order[i - 1]),
                         std::max(order[i - 2], order[i - 1]));
      i -= 2;
    } else {
      --i;
    }
  }
  std::sort(edges.begin(), edges.end());
  return OptimalResult{m[n], std::move(edges), OptimalMethod::PathDp};
}

OptimalResult optimal_tree_dp(const WeightedGraph& g) {
  const int n = g.num_nodes();
  if (g.num_edges() > n - 1 && n > 0)
    throw std::invalid_argument("tree_dp: graph has a cycle (too many edges)");

  std::vector<int> parent(n, -1), bfs;
  std::vector<char> seen(n, 0);
  bfs.reserve(n);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    const std::size_t begin = bfs.size();
    bfs.push_back(root);
    parent[root] = -1;
    for (std::size_t q = begin; q < bfs.size(); ++q) {
      const int u = bfs[q];
      for (int v : g.neighbors(u)) {
        if (v == parent[u]) continue;
        if (seen[v]) throw std::invalid_argument("tree_dp: graph has a cycle");
        seen[v] = 1;
        parent[v] = u;
        bfs.push_back(v);
      }
    }
  }

  // dp0: node unmatched-to-children optimum; dp1: matched to its best child.
  std::vector<double> dp0(n, 0.0), dp1(n, -1.0);
  std::vector<int> best_child(n, -1);
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    const int u = *it;
    double sum = 0.0;
    for (int v : g.neighbors(u)) {
      if (v == parent[u]) continue;
      sum += std::max(dp0[v], dp1[v]);
    }
    dp0[u] = sum;
    dp1[u] = -1.0;
    for (int v : g.neighbors(u)) {
      if (v == parent[u]) continue;
      const double cand = sum + edge_weight_between(g, u, v) + dp0[v] - std::max(dp0[v], dp1[v]);
      if (cand > dp1[u]) {
        dp1[u] = cand;
        best_child[u] = v;
      }
    }
  }

  double total = 0.0;
  std::vector<std::pair<int, int>> edges;
  // Top-down reconstruction; free[u] == matching u to a child is allowed.
  std::vector<char> free_state(n, 1);
  for (const int u : bfs) {
    if (parent[u] == -1) total += std::max(dp0[u], dp1[u]);
    const bool take = free_state[u] && dp1[u] > dp0[u];
    if (take) {
      const int b = best_child[u];
      edges.emplace_back(std::min(u, b), std::max(u, b));
      free_state[b] = 0;
    }
  }
  std::sort(edges.begin(), edges.end());
  return OptimalResult{total, std::move(edges), OptimalMethod::TreeDp};
}

OptimalResult optimal_exhaustive(const WeightedGraph& g, int max_edges) {
  const auto m = g.num_edges();
  if (m > max_edges)
    throw std::invalid_argument("exhaustive: instance exceeds the edge cap");

  std::vector<const Edge*> order(m);
  for (std::int64_t e = 0; e < m; ++e) order[e] = &g.edge(e);
  std::sort(order.begin(), order.end(), [](const Edge* a, const Edge* b) {
    if (a->w != b->w) return a->w > b->w;
    return a->u != b->u ? a->u < b->u : a->v < b->v;
  });

  std::vector<char> used(g.num_nodes(), 0);
  double best = 0.0;
  std::vector<const Edge*> chosen, best_set;

  // Half-max-neighbor bound over the still-available suffix.
  auto upper = [&](std::size_t idx) {
    double s = 0.0;
    std::vector<double> node_max(g.num_nodes(), 0.0);
    for (std::size_t e = idx; e < order.size(); ++e) {
      const Edge* ed = order[e];
      if (used[ed->u] || used[ed->v]) continue;
      node_max[ed->u] = std::max(node_max[ed->u], ed->w);
      node_max[ed->v] = std::max(node_max[ed->v], ed->w);
    }
    for (double x : node_max) s += x;
    return s / 2.0;
  };

  std::function<void(std::size_t, double)> rec = [&](std::size_t idx, double cur) {
    if (cur > best) {
      best = cur;
      best_set = chosen;
    }
    if (idx >= order.size()) return;
    if (cur + upper(idx) <= best) return;
    const Edge* ed = order[idx];
    if (!used[ed->u] && !used[ed->v]) {
      used[ed->u] = used[ed->v] = 1;
      chosen.push_back(ed);
      rec(idx + 1, cur + ed->w);
      chosen.pop_back();
      used[ed->u] = used[ed->v] = 0;
    }
    rec(idx + 1, cur);
  };
  rec(0, 0.0);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(best_set.size());
  for (const Edge* e : best_set) edges.emplace_back(e->u, e->v);
  std::sort(edges.begin(), edges.end());
  return OptimalResult{best, std::move(edges), OptimalMethod::Exhaustive};
}

OptimalResult optimal_multiunit_exhaustive(const WeightedGraph& g, int max_total_quantity) {
  if (!g.has_quantities())
    throw std::invalid_argument("multiunit_exhaustive: graph has no quantities");
  if (g.total_quantity() > max_total_quantity)
    throw std::invalid_argument("multiunit_exhaustive: instance exceeds the quantity cap");

  const auto m = g.num_edges();
  std::vector<const Edge*> order(m);
  for (std::int64_t e = 0; e < m; ++e) order[e] = &g.edge(e);
  std::sort(order.begin(), order.end(), [](const Edge* a, const Edge* b) {
    if (a->w != b->w) return a->w > b->w;
    return a->u != b->u ? a->u < b->u : a->v < b->v;
  });

  std::vector<int> residual(g.num_nodes());
  for (int i = 0; i < g.num_nodes(); ++i) residual[i] = g.quantity(i);
  double best = 0.0;

  auto upper = [&](std::size_t idx) {
    double s = 0.0;
    for (std::size_t e = idx; e < order.size(); ++e) {
      const Edge* ed = order[e];
      s += ed->w * std::min(residual[ed->u], residual[ed->v]);
    }
    return s;
  };

  std::function<void(std::size_t, double)> rec = [&](std::size_t idx, double cur) {
    best = std::max(best, cur);
    if (idx >= order.size()) return;
    if (cur + upper(idx) <= best) return;
    const Edge* ed = order[idx];
    const int cap = std::min(residual[ed->u], residual[ed->v]);
    for (int x = cap; x >= 0; --x) {
      residual[ed->u] -= x;
      residual[ed->v] -= x;
      rec(idx + 1, cur + ed->w * x);
      residual[ed->u] += x;
      residual[ed->v] += x;
    }
  };
  rec(0, 0.0);
  return OptimalResult{best, std::nullopt, OptimalMethod::MultiunitExhaustive};
}

}  // namespace d2d
