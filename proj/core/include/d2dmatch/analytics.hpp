#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d2dmatch/weight_model.hpp"

namespace d2d {

// Linear recurrence a_n = constant + sum_i coef_i * a_{n - lag_i} describing
// the expected greedy total on a growing structure. Coefficients are the
// probabilities of the first-certainly-matched-edge cases and sum to 1, so
// a_n / n converges to slope = constant / sum_i lag_i * coef_i.
struct RecurrenceSpec {
  double constant = 0.0;
  std::vector<std::pair<int, double>> lags;  // (lag >= 1, coefficient)
  double slope = 0.0;

  double coefficient_sum() const;
};

// Expected greedy weight recurrence for an n-user line. Supported cases:
// K = 2 with any distribution, or uniform distribution with any K.
RecurrenceSpec linear_recurrence(const WeightModel& model);

// Iterates a recurrence from the given initial values a_1..a_m (a_j = 0 for
// j < 1) and returns a_n.
double iterate_recurrence(const RecurrenceSpec& rec, std::span<const double> initials, int n);

// Exact E[greedy total] on a small line by enumerating all K^(n-1) weight
// assignments (left-priority ties). Oracle for recurrence initials and tests.
double exact_line_greedy_mean(int n, const WeightModel& model);

// Ratio of the greedy slope to the per-user expected decomposition bound.
double pr_lower_bound_linear(const WeightModel& model);

// Closed form the linear lower bound converges to when all weights become
// similar under a uniform distribution: 1 - ((K-1)/(K+1))^K.
double pr_lower_bound_linear_similar_weights(int k);

// 2 x n sub-grid recurrence (second-row horizontal edges removed), K = 2.
RecurrenceSpec grid_recurrence(const WeightModel& model);

// Printed left/right proposal recursion values for the sub-grid analysis,
// K = 2: y_k^r = (k/K)(1 - sum_{t>k} y_t^r/K), y_k^l = (k/K)(1 - sum_{t>=k} y_t^r/K).
struct GridProposalProbs {
  double y1_right = 0.0, y2_right = 0.0;
  double y1_left = 0.0, y2_left = 0.0;
};
GridProposalProbs grid_proposal_probabilities();

// Second-row vertical-match probability used by the grid analysis.
inline constexpr double kGridVerticalMatchProb = 4.0 / 15.0;

// Expected per-node weight added by greedily matching the second-row segments
// (segment-count law (1-p_M)^t p_M^2, line values a_t for t <= 100).
double grid_step3_constant(double delta);

// Grid ratio bound (0.9213 + 0.6967*delta)/(1 + 0.9375*delta), computed from
// the recurrence slope, the step-3 constant and the degree-4 neighbor-max value.
double pr_lower_bound_grid(double delta);

// Proposal-probability fixed point for the Poisson(d) random tree: y_k is the
// probability that a child linked by a weight-v_k edge proposes to its parent.
// Solved top weight first, each by bisection on (0, 1].
struct FixedPointSolution {
  double d = 0.0;
  std::vector<double> y;
  std::vector<double> residuals;
};
FixedPointSolution solve_tree_fixed_point(double d, const WeightModel& model,
                                          double tolerance = 1e-10);

// Right-hand side of the level-k proposal equation given the already-solved
// higher levels (y_above is indexed by level; only entries > k are read).
double tree_fixed_point_rhs(double y, double d, const WeightModel& model, int k,
                            std::span<const double> y_above, double series_tol = 1e-13);

// Per-weight probability that the root of the random tree ends matched at
// weight v_k, combined from the fixed point:
//   P_k = prod_{j>k} e^{-d p_j y_j} * (1 - e^{-d p_k y_k}).
std::vector<double> root_match_probabilities(const FixedPointSolution& fp,
                                             const WeightModel& model);

enum class RootWeightMode { Analytic, MonteCarlo };

struct RootWeightResult {
  double value = 0.0;     // E[half of the root's matched edge weight]
  double std_error = 0.0; // Monte-Carlo mode only
  bool approximate = false;  // analytic mode with d >= 1 (giant component)
  std::int64_t resampled = 0;  // Monte-Carlo trees discarded by the size cap
};

RootWeightResult expected_root_weight(double d, const WeightModel& model, RootWeightMode mode,
                                      std::int64_t samples = 0, std::uint64_t seed = 0);

// Monte-Carlo estimate of the proposal probabilities themselves: the tree is
// grown below the child and a pendant parent with a weight-v_k edge is
// attached; y_k is the probability the child ends matched to that parent.
struct ProposalFrequency {
  std::vector<double> freq;
  std::vector<double> std_error;
};
ProposalFrequency measure_proposal_frequencies(double d, const WeightModel& model,
                                               std::int64_t samples, std::uint64_t seed);

struct PrCurvePoint {
  double d = 0.0;
  double greedy_per_node = 0.0;   // numerator / n
  double bound_per_node = 0.0;    // Poisson-mixed neighbor-max expectation / n
  double pr = 0.0;
  double ci_halfwidth = 0.0;      // on greedy_per_node
  bool analytic_numerator = false;
};

// Average performance ratio curve over mean degree d for G(n, d/n): the
// numerator is the tree fixed point for d < 1 and simulation otherwise; the
// denominator is the Poisson-mixed neighbor-max expectation.
std::vector<PrCurvePoint> pr_curve_gnp(std::span<const double> d_grid, int n,
                                       const WeightModel& model, int seeds_per_point,
                                       std::uint64_t seed, int workers = 1);

// Multi-unit line ratio bound for weights uniform {1, 1+delta} and quantities
// uniform {1, 2}: ((4+3*delta)/9 + segment term) / (0.75 + 0.5*delta),
// evaluating to (0.604 + 0.433*delta)/(0.75 + 0.5*delta).
double pr_lower_bound_multiunit(double delta);

// Steady-state participant count of the dynamic market:
//   M = sum_{t=0}^{T-1} lambda e^{-mu (T-t)} / (1 - gamma e^{-mu T}).
double steady_state_participants(double lambda, double mu, double gamma, int t_interval);

}  // namespace d2d
