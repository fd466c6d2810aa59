#include "d2dmatch/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "d2dmatch/rng.hpp"

namespace d2d {

std::vector<std::pair<int, int>> MatchingOutcome::partners_of(int node) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : matched_edges) {
    if (e.u == node) out.emplace_back(e.v, e.units);
    if (e.v == node) out.emplace_back(e.u, e.units);
  }
  return out;
}

double MatchingOutcome::recompute_total() const {
  double s = 0.0;
  for (const auto& e : matched_edges) s += e.w * e.units;
  return s;
}

namespace {

// True when (w1, id1) beats (w2, id2) under the tie rule.
inline bool better(double w1, std::int32_t id1, double w2, std::int32_t id2, TieRule tie) {
  if (w1 != w2) return w1 > w2;
  return tie == TieRule::HighId ? id1 > id2 : id1 < id2;
}

// Per-node adjacency slots sorted by descending preference. A cursor into
// this order only ever advances (matched/exhausted nodes never come back),
// which keeps the whole run at O(E) preference scans instead of O(rounds*E).
struct PreferenceOrder {
  std::vector<std::int32_t> slots;    // adjacency slot indices, segment per node
  std::vector<std::int32_t> cursor;   // per-node position into its segment
  std::vector<std::int32_t> begin;    // segment offsets (n+1)

  PreferenceOrder(const WeightedGraph& g, TieRule tie) {
    const int n = g.num_nodes();
    begin.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) begin[i + 1] = begin[i] + g.degree(i);
    slots.resize(begin[n]);
    cursor.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      const auto nbrs = g.neighbors(i);
      const auto eids = g.incident_edges(i);
      std::int32_t* seg = slots.data() + begin[i];
      std::iota(seg, seg + nbrs.size(), 0);
      std::sort(seg, seg + nbrs.size(), [&](std::int32_t a, std::int32_t b) {
        return better(g.edge(eids[a]).w, nbrs[a], g.edge(eids[b]).w, nbrs[b], tie);
      });
    }
  }
};

template <typename Fn>
void run_chunked(const std::vector<std::int32_t>& items, int workers, const Fn& fn) {
  if (workers <= 1 || items.size() < 2048) {
    fn(0, items.size());
    return;
  }
  const std::size_t chunk = (items.size() + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) {
    const std::size_t lo = t * chunk;
    if (lo >= items.size()) break;
    const std::size_t hi = std::min(items.size(), lo + chunk);
    pool.emplace_back([&, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

MatchingOutcome greedy_match(const WeightedGraph& g, TieRule tie, int workers) {
  const int n = g.num_nodes();
  MatchingOutcome out;
  out.partner.assign(n, -1);

  PreferenceOrder pref(g, tie);
  std::vector<std::int32_t> cur;
  cur.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (g.degree(i) > 0) cur.push_back(i);
  }
  std::vector<std::int32_t> target(n, -1);

  while (!cur.empty()) {
    // Proposal phase: reads only the frozen partner state from the round
    // start; each node advances its own cursor, so chunks are independent.
    run_chunked(cur, workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t c = lo; c < hi; ++c) {
        const int i = cur[c];
        const auto nbrs = g.neighbors(i);
        std::int32_t& pos = pref.cursor[i];
        const std::int32_t end = pref.begin[i + 1] - pref.begin[i];
        const std::int32_t* seg = pref.slots.data() + pref.begin[i];
        while (pos < end && out.partner[nbrs[seg[pos]]] != -1) ++pos;
        target[i] = pos < end ? nbrs[seg[pos]] : -1;
      }
    });

    std::int64_t proposals = 0;
    std::int64_t matches = 0;
    for (const int i : cur) {
      if (target[i] == -1) continue;
      ++proposals;
      const int j = target[i];
      if (i < j && target[j] == i) {
        out.partner[i] = j;
        out.partner[j] = i;
        ++matches;
      }
    }
    if (proposals == 0) break;
    ++out.rounds;
    out.trace.push_back(RoundStats{proposals, matches});

    std::vector<std::int32_t> next;
    next.reserve(cur.size());
    for (const int i : cur) {
      if (out.partner[i] == -1 && target[i] != -1) next.push_back(i);
    }
    cur.swap(next);
  }

  for (int i = 0; i < n; ++i) {
    const int j = out.partner[i];
    if (j > i) {
      const auto nbrs = g.neighbors(i);
      const auto eids = g.incident_edges(i);
      for (std::size_t a = 0; a < nbrs.size(); ++a) {
        if (nbrs[a] == j) {
          out.matched_edges.push_back(MatchedEdge{i, j, g.edge(eids[a]).w, 1});
          out.total_weight += g.edge(eids[a]).w;
          break;
        }
      }
    }
  }
  return out;
}

MatchingOutcome greedy_match_multiunit(const WeightedGraph& g, TieRule tie, int workers) {
  if (!g.has_quantities())
    throw std::invalid_argument("greedy_match_multiunit: graph has no quantities");
  const int n = g.num_nodes();
  MatchingOutcome out;
  out.multiunit = true;
  out.partner.assign(n, -1);
  out.allocated.assign(n, 0);

  std::vector<std::int32_t> residual(n);
  for (int i = 0; i < n; ++i) residual[i] = g.quantity(i);

  PreferenceOrder pref(g, tie);
  std::vector<std::int32_t> cur;
  cur.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (g.degree(i) > 0) cur.push_back(i);
  }
  std::vector<std::int32_t> target(n, -1);
  std::unordered_map<std::int64_t, std::int32_t> units;  // edge id -> allocation

  while (!cur.empty()) {
    run_chunked(cur, workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t c = lo; c < hi; ++c) {
        const int i = cur[c];
        const auto nbrs = g.neighbors(i);
        std::int32_t& pos = pref.cursor[i];
        const std::int32_t end = pref.begin[i + 1] - pref.begin[i];
        const std::int32_t* seg = pref.slots.data() + pref.begin[i];
        while (pos < end && residual[nbrs[seg[pos]]] <= 0) ++pos;
        target[i] = pos < end ? nbrs[seg[pos]] : -1;
      }
    });

    std::int64_t proposals = 0;
    std::int64_t matches = 0;
    for (const int i : cur) {
      if (target[i] == -1) continue;
      ++proposals;
      const int j = target[i];
      if (i < j && target[j] == i) {
        const std::int32_t t = std::min(residual[i], residual[j]);
        residual[i] -= t;
        residual[j] -= t;
        out.allocated[i] += t;
        out.allocated[j] += t;
        const auto nbrs = g.neighbors(i);
        const auto eids = g.incident_edges(i);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
          if (nbrs[a] == j) {
            units[eids[a]] += t;
            break;
          }
        }
        ++matches;
      }
    }
    if (proposals == 0) break;
    ++out.rounds;
    out.trace.push_back(RoundStats{proposals, matches});

    std::vector<std::int32_t> next;
    next.reserve(cur.size());
    for (const int i : cur) {
      if (residual[i] > 0 && target[i] != -1) next.push_back(i);
    }
    cur.swap(next);
  }

  for (const auto& [eid, x] : units) {
    const Edge& e = g.edge(eid);
    out.matched_edges.push_back(MatchedEdge{e.u, e.v, e.w, x});
  }
  std::sort(out.matched_edges.begin(), out.matched_edges.end(),
            [](const MatchedEdge& a, const MatchedEdge& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
  for (const auto& e : out.matched_edges) out.total_weight += e.w * e.units;
  // Single-partner view where it is unambiguous.
  for (const auto& e : out.matched_edges) {
    if (out.partner[e.u] == -1) out.partner[e.u] = e.v;
    if (out.partner[e.v] == -1) out.partner[e.v] = e.u;
  }
  return out;
}

MatchingOutcome apply_failures(const WeightedGraph& g, const MatchingOutcome& base,
                               const FailureParams& params, std::uint64_t seed) {
  if (!g.has_coords())
    throw std::invalid_argument("greedy_with_failures: graph has no coordinates");
  if (params.delta1 < 0 || params.delta2 < 0)
    throw std::invalid_argument("greedy_with_failures: negative failure scale");

  const auto& edges = base.matched_edges;
  const std::size_t m = edges.size();

  std::vector<Point> mids(m);
  std::vector<double> dist(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Point a = g.coord(edges[e].u);
    const Point b = g.coord(edges[e].v);
    mids[e] = Point{(a.x + b.x) / 2, (a.y + b.y) / 2};
    dist[e] = std::hypot(a.x - b.x, a.y - b.y);
  }

  // Interferer counts: other matched pairs with midpoints within the radius.
  std::vector<int> interferers(m, 0);
  if (params.delta2 > 0 && params.interference_radius > 0 && m > 1) {
    const double r = params.interference_radius;
    const double r2 = r * r;
    std::unordered_map<std::int64_t, std::vector<int>> buckets;
    auto cell = [r](double x) { return static_cast<std::int64_t>(std::floor(x / r)); };
    auto key = [](std::int64_t cx, std::int64_t cy) { return cx * 0x100000001b3LL + cy; };
    for (std::size_t e = 0; e < m; ++e)
      buckets[key(cell(mids[e].x), cell(mids[e].y))].push_back(static_cast<int>(e));
    for (std::size_t e = 0; e < m; ++e) {
      const std::int64_t cx = cell(mids[e].x), cy = cell(mids[e].y);
      int cnt = 0;
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          auto it = buckets.find(key(cx + dx, cy + dy));
          if (it == buckets.end()) continue;
          for (int o : it->second) {
            if (o == static_cast<int>(e)) continue;
            const double ddx = mids[e].x - mids[o].x;
            const double ddy = mids[e].y - mids[o].y;
            if (ddx * ddx + ddy * ddy < r2) ++cnt;
          }
        }
      }
      interferers[e] = cnt;
    }
  }

  // Matched edges are in canonical order, so the draw sequence is reproducible.
  Rng rng = make_stream(seed, 3);
  MatchingOutcome out;
  out.partner.assign(g.num_nodes(), -1);
  out.rounds = base.rounds;
  out.trace = base.trace;
  for (std::size_t e = 0; e < m; ++e) {
    const double p1 = std::min(1.0, params.delta1 * dist[e]);
    const double p2 = std::min(1.0, params.delta2 * interferers[e]);
    const bool fail1 = params.delta1 > 0 && rng.bernoulli(p1);
    const bool fail2 = params.delta2 > 0 && rng.bernoulli(p2);
    if (fail1 || fail2) continue;
    out.matched_edges.push_back(edges[e]);
    out.partner[edges[e].u] = edges[e].v;
    out.partner[edges[e].v] = edges[e].u;
    out.total_weight += edges[e].w;
  }
  return out;
}

MatchingOutcome greedy_with_failures(const WeightedGraph& g, const FailureParams& params,
                                     std::uint64_t seed, TieRule tie) {
  const MatchingOutcome base = greedy_match(g, tie);
  return apply_failures(g, base, params, seed);
}

}  // namespace d2d
