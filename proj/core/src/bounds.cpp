#include "d2dmatch/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace d2d {

namespace {

// Path edge weights in walk order (validated by the caller via degree shape).
std::vector<double> path_weights(const WeightedGraph& g) {
  const int n = g.num_nodes();
  if (n == 1 && g.num_edges() == 0) return {};
  if (g.num_edges() != n - 1)
    throw std::invalid_argument("decomposition_bound: graph is not a path");
  int endpoint = -1;
  for (int i = 0; i < n; ++i) {
    const int d = g.degree(i);
    if (d > 2 || (d == 0 && n > 1))
      throw std::invalid_argument("decomposition_bound: graph is not a path");
    if (d == 1 && endpoint == -1) endpoint = i;
  }
  std::vector<double> w;
  w.reserve(n - 1);
  int prev = -1, at = endpoint;
  while (true) {
    int next = -1;
    const auto nbrs = g.neighbors(at);
    const auto eids = g.incident_edges(at);
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      if (nbrs[a] != prev) {
        next = nbrs[a];
        w.push_back(g.edge(eids[a]).w);
        break;
      }
    }
    if (next == -1) break;
    prev = at;
    at = next;
  }
  if (static_cast<int>(w.size()) != n - 1)
    throw std::invalid_argument("decomposition_bound: graph is not a path");
  return w;
}

}  // namespace

double decomposition_bound_instance(const WeightedGraph& g, const WeightModel& model) {
  const auto w = path_weights(g);
  std::vector<int> level(w.size());
  for (std::size_t e = 0; e < w.size(); ++e) {
    const int k = model.level_of(w[e]);
    if (k < 0)
      throw std::invalid_argument("decomposition_bound: edge weight outside the support");
    level[e] = k;
  }
  // Step k keeps the edges with level >= k; each maximal segment of t such
  // edges contributes ceil(t/2) units of the step increment v_k - v_{k-1}.
  double bound = 0.0;
  for (int k = 0; k < model.size(); ++k) {
    const double increment = model.value(k) - (k > 0 ? model.value(k - 1) : 0.0);
    std::int64_t halves = 0;
    std::int64_t run = 0;
    for (std::size_t e = 0; e < w.size(); ++e) {
      if (level[e] >= k) {
        ++run;
      } else {
        halves += (run + 1) / 2;
        run = 0;
      }
    }
    halves += (run + 1) / 2;
    bound += increment * static_cast<double>(halves);
  }
  return bound;
}

double decomposition_bound_expected(int n, const WeightModel& model) {
  double bound = n * model.value(0) / 2.0;
  for (int k = 0; k + 1 < model.size(); ++k) {
    const double sk = model.cum_prob(k);
    bound += n * (model.value(k + 1) - model.value(k)) * (1.0 - sk) / (2.0 - sk);
  }
  return bound;
}

double neighbor_max_bound_instance(const WeightedGraph& g) {
  std::vector<double> node_max(g.num_nodes(), 0.0);
  for (const auto& e : g.edges()) {
    node_max[e.u] = std::max(node_max[e.u], e.w);
    node_max[e.v] = std::max(node_max[e.v], e.w);
  }
  double s = 0.0;
  for (double x : node_max) s += x;
  return s / 2.0;
}

double neighbor_max_bound_expected(const WeightedGraph& g, const WeightModel& model) {
  // Group by degree; E[max of deg draws] = sum_k v_k (S_k^deg - S_{k-1}^deg).
  const int n = g.num_nodes();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const int deg = g.degree(i);
    if (deg == 0) continue;
    for (int k = 0; k < model.size(); ++k) {
      s += model.value(k) * (std::pow(model.cum_prob(k), deg) -
                             std::pow(model.cum_prob(k - 1), deg));
    }
  }
  return s / 2.0;
}

double neighbor_max_bound_expected_poisson(int n, double d, const WeightModel& model) {
  // E[x^D] = e^{-d(1-x)} for D ~ Poisson(d).
  double s = 0.0;
  for (int k = 0; k < model.size(); ++k) {
    s += model.value(k) * (std::exp(-d * (1.0 - model.cum_prob(k))) -
                           std::exp(-d * (1.0 - model.cum_prob(k - 1))));
  }
  return n * s / 2.0;
}

double multiunit_bound(const WeightedGraph& g) {
  if (!g.has_quantities())
    throw std::invalid_argument("multiunit_bound: graph has no quantities");
  const int n = g.num_nodes();
  double s = 0.0;
  std::vector<std::pair<double, int>> nbrs;
  for (int i = 0; i < n; ++i) {
    nbrs.clear();
    const auto ns = g.neighbors(i);
    const auto eids = g.incident_edges(i);
    for (std::size_t a = 0; a < ns.size(); ++a) nbrs.emplace_back(g.edge(eids[a]).w, ns[a]);
    std::sort(nbrs.begin(), nbrs.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const int qi = g.quantity(i);
    std::int64_t higher_q = 0;  // sum of quantities of better-ranked neighbors
    for (std::size_t t = 0; t < nbrs.size(); ++t) {
      const int qj = g.quantity(nbrs[t].second);
      const std::int64_t x =
          t == 0 ? std::min<std::int64_t>(qi, qj)
                 : std::max<std::int64_t>(0, std::min<std::int64_t>(qi - higher_q, qj));
      s += nbrs[t].first * static_cast<double>(x);
      higher_q += qj;
    }
  }
  return s / 2.0;
}

}  // namespace d2d
