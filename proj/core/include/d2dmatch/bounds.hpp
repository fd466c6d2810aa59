#pragma once

#include "d2dmatch/graph.hpp"
#include "d2dmatch/weight_model.hpp"

namespace d2d {

// K-step weight-subtraction bound on a path instance: at step k the maximal
// segments of edges with weight >= v_k contribute (v_k - v_{k-1}) * ceil(len/2)
// each. Upper-bounds the optimal matching on the instance.
double decomposition_bound_instance(const WeightedGraph& g, const WeightModel& model);

// Expected decomposition bound for an n-user line:
//   n*v_1/2 + n * sum_k (v_{k+1}-v_k) * (1-S_k)/(2-S_k),  S_k = p_1+...+p_k.
double decomposition_bound_expected(int n, const WeightModel& model);

// Half-max-neighbor instance bound: 1/2 * sum_i max_{j in A(i)} w_ij.
double neighbor_max_bound_instance(const WeightedGraph& g);

// Expectation of the instance bound over the weight distribution, using each
// node's actual degree:
//   1/2 * sum_i sum_k v_k * (S_k^deg(i) - S_{k-1}^deg(i)).
double neighbor_max_bound_expected(const WeightedGraph& g, const WeightModel& model);

// Same expectation with Poisson(d) degree mixing (sparse G(n, d/n) limit):
//   n/2 * sum_k v_k * (e^{-d(1-S_k)} - e^{-d(1-S_{k-1})}).
double neighbor_max_bound_expected_poisson(int n, double d, const WeightModel& model);

// Multi-unit allocation bound: per node, neighbors sorted by descending
// weight get x_{ij_1} = min(q_i, q_{j_1}) and
// x_{ij_t} = max(0, min(q_i - sum_{s<t} q_{j_s}, q_{j_t})); the bound is half
// the sum of w * x over all nodes. Degenerates to the instance bound when all
// quantities are 1.
double multiunit_bound(const WeightedGraph& g);

}  // namespace d2d
