#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace d2d {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  double w = 0.0;
  // Index into the weight model support, or -1 when the weight did not come
  // from a model (e.g. caching weights). Used for exact tie comparisons.
  std::int32_t level = -1;
};

// Immutable weighted sharing graph. Node ids are dense 0..n-1 and double as
// the deterministic tie-break priority. Safe to share read-only across
// threads once constructed.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Edge> edges,
                std::optional<std::vector<int>> quantities = std::nullopt,
                std::optional<std::vector<Point>> coords = std::nullopt);

  int num_nodes() const { return n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::int64_t e) const { return edges_[e]; }

  int degree(int i) const { return adj_off_[i + 1] - adj_off_[i]; }
  // Neighbor node ids of i, parallel to incident_edges(i).
  std::span<const std::int32_t> neighbors(int i) const {
    return {adj_nbr_.data() + adj_off_[i], static_cast<std::size_t>(degree(i))};
  }
  // Edge indices incident to i.
  std::span<const std::int32_t> incident_edges(int i) const {
    return {adj_edge_.data() + adj_off_[i], static_cast<std::size_t>(degree(i))};
  }

  bool has_quantities() const { return quantities_.has_value(); }
  std::span<const int> quantities() const { return *quantities_; }
  int quantity(int i) const { return (*quantities_)[i]; }

  bool has_coords() const { return coords_.has_value(); }
  std::span<const Point> coords() const { return *coords_; }
  const Point& coord(int i) const { return (*coords_)[i]; }

  double total_quantity() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> adj_off_;
  std::vector<std::int32_t> adj_nbr_;
  std::vector<std::int32_t> adj_edge_;
  std::optional<std::vector<int>> quantities_;
  std::optional<std::vector<Point>> coords_;
};

}  // namespace d2d
