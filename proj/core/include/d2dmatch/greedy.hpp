#pragma once

#include <cstdint>
#include <vector>

#include "d2dmatch/graph.hpp"
#include "d2dmatch/weight_model.hpp"

namespace d2d {

// Weight-tie resolution in the proposal phase. HighId is the default global
// rule; LowId reproduces the left/smaller-index priority used by the 1D and
// grid analyses.
enum class TieRule { HighId, LowId };

struct MatchedEdge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  double w = 0.0;
  std::int32_t units = 1;  // allocation x_uv; exactly 1 in single-unit mode
};

struct RoundStats {
  std::int64_t proposals = 0;
  std::int64_t matches = 0;
};

struct MatchingOutcome {
  std::vector<MatchedEdge> matched_edges;
  // Single-unit partner per node (-1 when unmatched). In multi-unit mode a
  // node may have several partners; see partners_of().
  std::vector<std::int32_t> partner;
  double total_weight = 0.0;
  int rounds = 0;
  std::vector<RoundStats> trace;

  bool multiunit = false;
  // Units allocated per node (multi-unit mode).
  std::vector<std::int32_t> allocated;

  std::vector<std::pair<int, int>> partners_of(int node) const;
  double recompute_total() const;
};

// Round-synchronous proposal/matching dynamics. Each round every unmatched
// node proposes to its maximum-weight unmatched neighbor (ties by rule);
// mutual proposals match and leave the graph. Terminates when every node is
// matched or isolated. `workers` parallelizes the proposal phase; results are
// identical for any worker count.
MatchingOutcome greedy_match(const WeightedGraph& g, TieRule tie = TieRule::HighId,
                             int workers = 1);

// Multi-unit variant: a mutual proposal on (i,j) transfers
// min(residual_i, residual_j) units; nodes exit at zero residual.
MatchingOutcome greedy_match_multiunit(const WeightedGraph& g, TieRule tie = TieRule::HighId,
                                       int workers = 1);

struct FailureParams {
  double delta1 = 0.0;             // type-I scale: fail prob min(1, delta1 * distance)
  double delta2 = 0.0;             // type-II scale: fail prob min(1, delta2 * interferers)
  double interference_radius = 0;  // pairs interfere when midpoints are closer than this
};

// Runs greedy_match, then knocks out matched pairs by distance (type-I) and
// midpoint interference (type-II). Failed pairs contribute zero weight.
MatchingOutcome greedy_with_failures(const WeightedGraph& g, const FailureParams& params,
                                     std::uint64_t seed, TieRule tie = TieRule::HighId);

// Failure knockout applied to an existing matching (shares the base run
// across several failure settings).
MatchingOutcome apply_failures(const WeightedGraph& g, const MatchingOutcome& base,
                               const FailureParams& params, std::uint64_t seed);

}  // namespace d2d
