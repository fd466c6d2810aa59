#include "d2dmatch/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace d2d {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges,
                             std::optional<std::vector<int>> quantities,
                             std::optional<std::vector<Point>> coords)
    : n_(n),
      edges_(std::move(edges)),
      quantities_(std::move(quantities)),
      coords_(std::move(coords)) {
  if (n_ < 0) throw std::invalid_argument("graph: negative node count");
  for (auto& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.w < 0.0) throw std::invalid_argument("graph: negative edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw std::invalid_argument("graph: duplicate edge");
  }
  if (quantities_) {
    if (static_cast<int>(quantities_->size()) != n_)
      throw std::invalid_argument("graph: quantities size mismatch");
    for (int q : *quantities_) {
      if (q < 1) throw std::invalid_argument("graph: quantities must be >= 1");
    }
  }
  if (coords_ && static_cast<int>(coords_->size()) != n_)
    throw std::invalid_argument("graph: coords size mismatch");

  adj_off_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++adj_off_[e.u + 1];
    ++adj_off_[e.v + 1];
  }
  for (int i = 0; i < n_; ++i) adj_off_[i + 1] += adj_off_[i];
  adj_nbr_.resize(edges_.size() * 2);
  adj_edge_.resize(edges_.size() * 2);
  std::vector<std::int32_t> fill(adj_off_.begin(), adj_off_.end() - 1);
  for (std::int64_t e = 0; e < num_edges(); ++e) {
    const auto& ed = edges_[e];
    adj_nbr_[fill[ed.u]] = ed.v;
    adj_edge_[fill[ed.u]++] = static_cast<std::int32_t>(e);
    adj_nbr_[fill[ed.v]] = ed.u;
    adj_edge_[fill[ed.v]++] = static_cast<std::int32_t>(e);
  }
}

double WeightedGraph::total_quantity() const {
  double s = 0.0;
  if (quantities_) {
    for (int q : *quantities_) s += q;
  }
  return s;
}

}  // namespace d2d
