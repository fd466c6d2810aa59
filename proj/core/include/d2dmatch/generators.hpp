#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dmatch/graph.hpp"
#include "d2dmatch/weight_model.hpp"

namespace d2d {

// Path graph with edges (i, i+1), weights i.i.d. from the model.
WeightedGraph generate_line(int n, const WeightModel& model, std::uint64_t seed);

// side x side lattice, node id = row*side + col, 2*side*(side-1) edges.
WeightedGraph generate_grid2d(int side, const WeightModel& model, std::uint64_t seed);

// Erdos-Renyi G(n, p): each unordered pair is an edge independently.
WeightedGraph generate_gnp(int n, double p, const WeightModel& model, std::uint64_t seed);

// n points uniform on a disk of radius R; edge iff Euclidean distance < L.
// Coordinates are stored on the graph.
WeightedGraph generate_geometric(int n, double radius_r, double range_l,
                                 const WeightModel& model, std::uint64_t seed);

// Per-node quantities drawn i.i.d. uniform from the given set (multi-unit runs).
WeightedGraph with_random_quantities(const WeightedGraph& g, std::span<const int> quantity_set,
                                     std::uint64_t seed);

struct LocationRecord {
  std::string user_id;
  double x = 0.0;
  double y = 0.0;
  int floor = -1;  // -1 when the input file has no floor column
};

// Collaborative-caching instance: each user gets a random cache_size-subset of
// a file library; users within range L (and on the same floor, when floors are
// present) that cache different sets get an edge weighted by the size of the
// symmetric difference of their caches.
WeightedGraph build_caching_graph(const std::vector<LocationRecord>& records,
                                  int file_library_size, int cache_size,
                                  double range_l, std::uint64_t seed);

// Synthetic stand-in for the real location dataset: users uniform on a disk,
// spread over the given number of floors.
std::vector<LocationRecord> synthetic_locations(int n, double radius_r, int floors,
                                                std::uint64_t seed);

enum class Family { Line, Grid2d, Gnp, Geometric, Caching };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Declarative description of a graph source, used by the experiment layer.
struct GeneratorSpec {
  Family family = Family::Line;
  int n = 0;            // node count (line, gnp, geometric, caching)
  int side = 0;         // grid2d
  double p = 0.0;       // gnp connection probability (alternative to d)
  double d = 0.0;       // gnp mean degree, p = d/n when p == 0
  double radius = 0.0;  // geometric / caching disk radius
  double range = 0.0;   // geometric / caching communication range
  int library_size = 10;
  int cache_size = 3;
  std::vector<int> quantity_set;  // non-empty -> attach random quantities

  WeightedGraph build(const WeightModel& model, std::uint64_t seed) const;
  int node_count() const { return family == Family::Grid2d ? side * side : n; }
};

}  // namespace d2d
