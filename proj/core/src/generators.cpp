#include "d2dmatch/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "d2dmatch/rng.hpp"

namespace d2d {

namespace {

Edge make_edge(int u, int v, const WeightModel& model, Rng& rng) {
  const int level = model.sample(rng);
  return Edge{static_cast<std::int32_t>(u), static_cast<std::int32_t>(v),
              model.value(level), static_cast<std::int32_t>(level)};
}

}  // namespace

WeightedGraph generate_line(int n, const WeightModel& model, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_line: n must be >= 2");
  Rng rng = make_stream(seed, 0);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back(make_edge(i, i + 1, model, rng));
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph generate_grid2d(int side, const WeightModel& model, std::uint64_t seed) {
  if (side < 2) throw std::invalid_argument("generate_grid2d: side must be >= 2");
  Rng rng = make_stream(seed, 0);
  const int n = side * side;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2) * side * (side - 1));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int id = r * side + c;
      if (c + 1 < side) edges.push_back(make_edge(id, id + 1, model, rng));
      if (r + 1 < side) edges.push_back(make_edge(id, id + side, model, rng));
    }
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph generate_gnp(int n, double p, const WeightModel& model, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_gnp: n must be >= 2");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("generate_gnp: p must be in (0, 1]");
  Rng rng = make_stream(seed, 0);
  std::vector<Edge> edges;
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  edges.reserve(static_cast<std::size_t>(std::min<double>(
      static_cast<double>(pairs), 1.1 * static_cast<double>(pairs) * p + 64)));
  // Enumerate pairs lexicographically by (u, v), u < v, jumping over
  // non-edges with geometric skips.
  std::int64_t idx = -1;
  int u = 0;
  std::int64_t row_end = n - 1;  // one past the last index of u's row
  std::int64_t row_start = 0;
  while (true) {
    idx += rng.geometric_skip(p) + 1;
    if (idx >= pairs) break;
    while (idx >= row_end) {
      ++u;
      row_start = row_end;
      row_end += n - 1 - u;
    }
    const int v = static_cast<int>(u + 1 + (idx - row_start));
    edges.push_back(make_edge(u, v, model, rng));
  }
  return WeightedGraph(n, std::move(edges));
}

namespace {

// Uniform point on a disk of radius r.
Point disk_point(double r, Rng& rng) {
  const double rad = r * std::sqrt(rng.uniform01());
  const double ang = 2.0 * M_PI * rng.uniform01();
  return Point{rad * std::cos(ang), rad * std::sin(ang)};
}

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Grid hash over cells of size `cell`; collects unordered neighbor pairs
// closer than `cell` in canonical order.
template <typename Accept>
std::vector<std::pair<int, int>> pairs_within(const std::vector<Point>& pts, double cell,
                                              const Accept& accept) {
  std::unordered_map<std::int64_t, std::vector<int>> buckets;
  auto key = [cell](const Point& p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell));
    return cx * 0x100000001b3LL + cy;
  };
  buckets.reserve(pts.size());
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) buckets[key(pts[i])].push_back(i);

  const double cell2 = cell * cell;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const auto cx = static_cast<std::int64_t>(std::floor(pts[i].x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(pts[i].y / cell));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find((cx + dx) * 0x100000001b3LL + (cy + dy));
        if (it == buckets.end()) continue;
        for (int j : it->second) {
          if (j <= i) continue;
          if (dist2(pts[i], pts[j]) < cell2 && accept(i, j)) out.emplace_back(i, j);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

WeightedGraph generate_geometric(int n, double radius_r, double range_l,
                                 const WeightModel& model, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_geometric: n must be >= 2");
  if (!(radius_r > 0.0)) throw std::invalid_argument("generate_geometric: R must be > 0");
  if (!(range_l > 0.0)) throw std::invalid_argument("generate_geometric: L must be > 0");
  Rng rng = make_stream(seed, 0);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = disk_point(radius_r, rng);
  auto pairs = pairs_within(pts, range_l, [](int, int) { return true; });
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) edges.push_back(make_edge(i, j, model, rng));
  return WeightedGraph(n, std::move(edges), std::nullopt, std::move(pts));
}

WeightedGraph with_random_quantities(const WeightedGraph& g, std::span<const int> quantity_set,
                                     std::uint64_t seed) {
  if (quantity_set.empty())
    throw std::invalid_argument("with_random_quantities: empty quantity set");
  for (int q : quantity_set) {
    if (q < 1) throw std::invalid_argument("with_random_quantities: quantities must be >= 1");
  }
  Rng rng = make_stream(seed, 1);
  std::vector<int> qs(g.num_nodes());
  for (auto& q : qs) q = quantity_set[rng.bounded(quantity_set.size())];
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  auto coords = g.has_coords()
                    ? std::optional<std::vector<Point>>(
                          std::vector<Point>(g.coords().begin(), g.coords().end()))
                    : std::nullopt;
  return WeightedGraph(g.num_nodes(), std::move(edges), std::move(qs), std::move(coords));
}

WeightedGraph build_caching_graph(const std::vector<LocationRecord>& records,
                                  int file_library_size, int cache_size, double range_l,
                                  std::uint64_t seed) {
  if (cache_size < 1 || file_library_size < cache_size)
    throw std::invalid_argument("caching: need file_library_size >= cache_size >= 1");
  if (!(range_l > 0.0)) throw std::invalid_argument("caching: L must be > 0");
  const int n = static_cast<int>(records.size());
  Rng rng = make_stream(seed, 0);

  // Random cache_size-subset per user, as a bitmask (library sizes are small).
  std::vector<std::uint64_t> cache(n, 0);
  std::vector<int> pool(file_library_size);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < file_library_size; ++f) pool[f] = f;
    std::uint64_t mask = 0;
    for (int t = 0; t < cache_size; ++t) {
      const int pick = static_cast<int>(rng.bounded(file_library_size - t));
      mask |= 1ULL << pool[pick];
      std::swap(pool[pick], pool[file_library_size - t - 1]);
    }
    cache[i] = mask;
  }

  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = Point{records[i].x, records[i].y};
  auto same_floor = [&](int i, int j) { return records[i].floor == records[j].floor; };
  auto pairs = pairs_within(pts, range_l, same_floor);

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    const int diff = std::popcount(cache[i] ^ cache[j]);
    if (diff == 0) continue;  // identical caches share nothing
    edges.push_back(Edge{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                         static_cast<double>(diff), -1});
  }
  return WeightedGraph(n, std::move(edges), std::nullopt, std::move(pts));
}

std::vector<LocationRecord> synthetic_locations(int n, double radius_r, int floors,
                                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("synthetic_locations: n must be >= 1");
  if (floors < 1) throw std::invalid_argument("synthetic_locations: floors must be >= 1");
  Rng rng = make_stream(seed, 2);
  std::vector<LocationRecord> out(n);
  for (int i = 0; i < n; ++i) {
    const Point p = disk_point(radius_r, rng);
    out[i] = LocationRecord{"u" + std::to_string(i), p.x, p.y,
                            floors > 1 ? static_cast<int>(rng.bounded(floors)) : -1};
  }
  return out;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Line: return "line";
    case Family::Grid2d: return "grid2d";
    case Family::Gnp: return "gnp";
    case Family::Geometric: return "geometric";
    case Family::Caching: return "caching";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "line") return Family::Line;
  if (name == "grid2d" || name == "grid") return Family::Grid2d;
  if (name == "gnp") return Family::Gnp;
  if (name == "geometric") return Family::Geometric;
  if (name == "caching") return Family::Caching;
  throw std::invalid_argument("unknown graph family: " + name);
}

WeightedGraph GeneratorSpec::build(const WeightModel& model, std::uint64_t seed) const {
  auto attach = [&](WeightedGraph g) {
    if (quantity_set.empty()) return g;
    return with_random_quantities(g, quantity_set, mix_seed(seed, 0x71));
  };
  switch (family) {
    case Family::Line:
      return attach(generate_line(n, model, seed));
    case Family::Grid2d:
      return attach(generate_grid2d(side, model, seed));
    case Family::Gnp: {
      const double prob = p > 0.0 ? p : d / static_cast<double>(n);
      return attach(generate_gnp(n, prob, model, seed));
    }
    case Family::Geometric:
      return attach(generate_geometric(n, radius, range, model, seed));
    case Family::Caching: {
      auto recs = synthetic_locations(n, radius, 1, mix_seed(seed, 0x10c));
      return attach(build_caching_graph(recs, library_size, cache_size, range, seed));
    }
  }
  throw std::invalid_argument("GeneratorSpec: bad family");
}

}  // namespace d2d
