#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2dmatch/graph.hpp"

namespace d2d {

enum class OptimalMethod {
  PathDp,
  TreeDp,
  Exhaustive,
  MultiunitExhaustive,
  DecompositionBound,
  NeighborMaxBound,
  MultiunitBound,
};

const char* method_name(OptimalMethod m);

struct OptimalResult {
  double total_weight = 0.0;
  // Matched edge set; present for the exact methods, absent for bounds.
  std::optional<std::vector<std::pair<int, int>>> matched_edges;
  OptimalMethod method = OptimalMethod::Exhaustive;
};

// Exact maximum-weight matching on a path via M(i) = max(M(i-1), M(i-2)+w).
OptimalResult optimal_path_dp(const WeightedGraph& g);

// Exact maximum-weight matching on a forest (rooted two-state DP).
OptimalResult optimal_tree_dp(const WeightedGraph& g);

// Exact optimum on small general graphs by branch and bound over edge
// inclusion, pruned with the half-max-neighbor bound.
OptimalResult optimal_exhaustive(const WeightedGraph& g, int max_edges = 22);

// Exact multi-unit optimum by DFS over integer edge allocations; requires
// quantities and total quantity <= max_total_quantity.
OptimalResult optimal_multiunit_exhaustive(const WeightedGraph& g, int max_total_quantity = 18);

}  // namespace d2d
