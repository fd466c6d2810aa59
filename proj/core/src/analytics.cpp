#include "d2dmatch/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "d2dmatch/bounds.hpp"
#include "d2dmatch/graph.hpp"
#include "d2dmatch/generators.hpp"
#include "d2dmatch/greedy.hpp"
#include "d2dmatch/rng.hpp"

namespace d2d {

double RecurrenceSpec::coefficient_sum() const {
  double s = 0.0;
  for (const auto& [lag, c] : lags) s += c;
  return s;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

double asymptotic_slope(double constant, std::span<const std::pair<int, double>> lags) {
  double denom = 0.0;
  for (const auto& [lag, c] : lags) denom += lag * c;
  return constant / denom;
}

}  // namespace

RecurrenceSpec linear_recurrence(const WeightModel& model) {
  const int k = model.size();
  RecurrenceSpec rec;
  if (k == 1) {
    // Every other edge matches: a_n = v_1 + a_{n-2}.
    rec.constant = model.value(0);
    rec.lags = {{2, 1.0}};
  } else if (k == 2) {
    const double p1 = model.prob(0), p2 = model.prob(1);
    const double v1 = model.value(0), v2 = model.value(1);
    rec.constant = p1 * p1 * v1 + (p2 + p1 * p2) * v2;
    rec.lags = {{2, p2 + p1 * p1}, {3, p1 * p2}};
  } else if (model.is_uniform()) {
    // beta_k = (K-1)^{K-k} (K+1)^{k-1} / K^K; gamma_k has lag k+1.
    const double kk = k;
    rec.constant = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double beta = std::pow(kk - 1, k - j) * std::pow(kk + 1, j - 1) / std::pow(kk, k);
      rec.constant += beta * model.value(j - 1);
    }
    for (int j = 1; j <= k; ++j) {
      double gamma = 0.0;
      for (int i = j; i <= k; ++i) gamma += i * binomial(i - 1, j - 1);
      gamma /= std::pow(kk, j + 1);
      rec.lags.emplace_back(j + 1, gamma);
    }
  } else {
    throw std::invalid_argument(
        "linear_recurrence: closed form needs K=2 or a uniform distribution; "
        "use simulation for this case");
  }
  rec.slope = asymptotic_slope(rec.constant, rec.lags);
  return rec;
}

double iterate_recurrence(const RecurrenceSpec& rec, std::span<const double> initials, int n) {
  if (n < 1) throw std::invalid_argument("iterate_recurrence: n must be >= 1");
  if (n <= static_cast<int>(initials.size())) return initials[n - 1];
  int max_lag = 0;
  for (const auto& [lag, c] : rec.lags) max_lag = std::max(max_lag, lag);
  // history[j] = a_{m-j}, values at index < 1 are zero.
  std::deque<double> history;
  for (int m = static_cast<int>(initials.size()); m >= 1; --m) history.push_back(initials[m - 1]);
  while (static_cast<int>(history.size()) < max_lag) history.push_back(0.0);
  double a = 0.0;
  for (int m = static_cast<int>(initials.size()) + 1; m <= n; ++m) {
    a = rec.constant;
    for (const auto& [lag, c] : rec.lags) a += c * history[lag - 1];
    history.push_front(a);
    history.pop_back();
  }
  return a;
}

double exact_line_greedy_mean(int n, const WeightModel& model) {
  if (n < 1) throw std::invalid_argument("exact_line_greedy_mean: n must be >= 1");
  if (n == 1) return 0.0;
  const int m = n - 1;
  const int k = model.size();
  if (std::pow(static_cast<double>(k), m) > 2e7)
    throw std::invalid_argument("exact_line_greedy_mean: instance too large");
  std::vector<int> levels(m, 0);
  double mean = 0.0;
  while (true) {
    std::vector<Edge> edges(m);
    double prob = 1.0;
    for (int e = 0; e < m; ++e) {
      edges[e] = Edge{static_cast<std::int32_t>(e), static_cast<std::int32_t>(e + 1),
                      model.value(levels[e]), static_cast<std::int32_t>(levels[e])};
      prob *= model.prob(levels[e]);
    }
    WeightedGraph g(n, std::move(edges));
    mean += prob * greedy_match(g, TieRule::LowId).total_weight;
    int e = 0;
    while (e < m && ++levels[e] == k) levels[e++] = 0;
    if (e == m) break;
  }
  return mean;
}

double pr_lower_bound_linear(const WeightModel& model) {
  const double slope = linear_recurrence(model).slope;
  const double per_user_bound = decomposition_bound_expected(1, model);
  return slope / per_user_bound;
}

double pr_lower_bound_linear_similar_weights(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return 1.0 - std::pow((k - 1.0) / (k + 1.0), k);
}

RecurrenceSpec grid_recurrence(const WeightModel& model) {
  if (model.size() != 2)
    throw std::invalid_argument("grid_recurrence: closed form needs K=2");
  const double p1 = model.prob(0), p2 = model.prob(1);
  const double v1 = model.value(0), v2 = model.value(1);
  RecurrenceSpec rec;
  rec.constant = (1.0 - std::pow(p1, 4)) * v2 + p1 * p1 * v1;
  rec.lags = {{1, p1 * p2}, {2, p1 * p1 * p1 + p2}, {3, p1 * p1 * p2}};
  rec.slope = asymptotic_slope(rec.constant, rec.lags);
  return rec;
}

GridProposalProbs grid_proposal_probabilities() {
  GridProposalProbs y;
  // y_k^r = (k/K)(1 - sum_{t=k+1}^K y_t^r / K) for K = 2, solved top-down,
  // then the left recursion as printed. Monte Carlo supports different left
  // values (see the grid probe experiment); these are the recursion's output.
  y.y2_right = 1.0;
  y.y1_right = 0.5 * (1.0 - y.y2_right / 2.0);
  y.y2_left = 1.0 * (1.0 - y.y2_right / 2.0);
  y.y1_left = 0.5 * (1.0 - (y.y1_right + y.y2_right) / 2.0);
  return y;
}

namespace {

// Expected greedy totals a_1..a_100 on short uniform two-level lines with
// V = {1, 1+delta}: a_t = (4+3d)/4 + (3/4) a_{t-2} + (1/4) a_{t-3}. Written
// directly so that delta = 0 evaluates the near-equal-weights limit (which
// differs from the exactly-equal single-level process).
std::vector<double> short_line_values(double delta) {
  std::vector<double> a(101, 0.0);
  if (a.size() > 2) a[2] = (2.0 + delta) / 2.0;
  for (int t = 3; t <= 100; ++t)
    a[t] = (4.0 + 3.0 * delta) / 4.0 + 0.75 * a[t - 2] + 0.25 * a[t - 3];
  return a;
}

}  // namespace

double grid_step3_constant(double delta) {
  // Segments of second-row nodes left unmatched after the vertical phase:
  // count law (1-p_M)^t p_M^2 per node, value a_t from the line recurrence
  // with V = {1, 1+delta} uniform. The t > 100 tail is below 1e-12.
  const std::vector<double> a = short_line_values(delta);
  const double pm = kGridVerticalMatchProb;
  double s = 0.0;
  for (int t = 2; t <= 100; ++t) s += std::pow(1.0 - pm, t) * pm * pm * a[t];
  return s;
}

double pr_lower_bound_grid(double delta) {
  if (delta < 0) throw std::invalid_argument("pr_lower_bound_grid: delta must be >= 0");
  // Greedy per node: half of (sub-grid slope + step-3 segment value); the
  // optimal side is the degree-4 neighbor-max expectation per node.
  double slope;
  if (delta > 0) {
    slope = grid_recurrence(WeightModel::uniform({1.0, 1.0 + delta})).slope;
  } else {
    slope = 19.0 / 30.0;  // limit of (19 + 15*delta)/30
  }
  const double greedy_per_node = (slope + grid_step3_constant(delta)) / 2.0;
  const double optimal_per_node = (16.0 + 15.0 * delta) / 32.0;
  return greedy_per_node / optimal_per_node;
}

// Right-hand side of the proposal fixed point for level k (0-based):
//   e^{-(p_k + sum_{j>k} y_j p_j) d} * sum_i (p_k d)^i (1-(1-y)^{i+1}) / ((i+1)! y)
// The e^{-p_k d} factor is the Poisson weight of the series over same-weight
// grandchildren; higher-weight levels contribute e^{-d p_j y_j} blocking terms.
double tree_fixed_point_rhs(double y, double d, const WeightModel& model, int k,
                            std::span<const double> y_above, double series_tol) {
  double expo = model.prob(k);
  for (int j = k + 1; j < model.size(); ++j) expo += y_above[j] * model.prob(j);
  const double prefactor = std::exp(-expo * d);
  const double pkd = model.prob(k) * d;
  double sum = 0.0;
  double term = 1.0;  // (p_k d)^i / (i+1)!
  for (int i = 0;; ++i) {
    const double factor =
        y > 0 ? (1.0 - std::pow(1.0 - y, i + 1)) / y : static_cast<double>(i + 1);
    sum += term * factor;
    term *= pkd / (i + 2);
    if (term * (i + 2) < series_tol) break;
    if (i > 500) break;
  }
  return prefactor * sum;
}

FixedPointSolution solve_tree_fixed_point(double d, const WeightModel& model, double tolerance) {
  if (!(d >= 0)) throw std::invalid_argument("solve_tree_fixed_point: d must be >= 0");
  if (!(tolerance > 0)) throw std::invalid_argument("solve_tree_fixed_point: bad tolerance");
  const int k_count = model.size();
  FixedPointSolution sol;
  sol.d = d;
  sol.y.assign(k_count, 0.0);
  sol.residuals.assign(k_count, 0.0);
  const double series_tol = tolerance * 1e-3;

  for (int k = k_count - 1; k >= 0; --k) {
    auto f = [&](double y) {
      return tree_fixed_point_rhs(y, d, model, k, sol.y, series_tol) - y;
    };
    // f(0+) = prefactor * e^{p_k d} - 0 > 0 and f(1) <= 0: bisect on (0, 1].
    double lo = 0.0, hi = 1.0;
    if (f(1.0) >= 0.0) {
      sol.y[k] = 1.0;  // d == 0 edge case
    } else {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0) {
          lo = mid;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-16) break;
      }
      sol.y[k] = 0.5 * (lo + hi);
    }
    sol.residuals[k] = std::abs(f(sol.y[k]));
    if (sol.residuals[k] > tolerance)
      throw std::runtime_error("solve_tree_fixed_point: bisection did not converge");
  }
  return sol;
}

std::vector<double> root_match_probabilities(const FixedPointSolution& fp,
                                             const WeightModel& model) {
  // Matched at v_k <=> no higher-weight child proposes and at least one
  // weight-v_k child does; proposer counts are Poisson(d p_k y_k) thinnings.
  std::vector<double> probs(model.size(), 0.0);
  for (int k = 0; k < model.size(); ++k) {
    double blocked = 0.0;
    for (int j = k + 1; j < model.size(); ++j) blocked += model.prob(j) * fp.y[j];
    probs[k] = std::exp(-fp.d * blocked) * (1.0 - std::exp(-fp.d * model.prob(k) * fp.y[k]));
  }
  return probs;
}

namespace {

struct TreeSample {
  std::vector<Edge> edges;
  int nodes = 0;
  bool overflow = false;
};

// Poisson(d) Galton-Watson tree, breadth-first ids, root 0.
TreeSample sample_tree(double d, const WeightModel& model, Rng& rng, int max_nodes) {
  TreeSample t;
  t.nodes = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const int kids = rng.poisson(d);
    for (int c = 0; c < kids; ++c) {
      if (t.nodes >= max_nodes) {
        t.overflow = true;
        return t;
      }
      const int v = t.nodes++;
      const int level = model.sample(rng);
      t.edges.push_back(Edge{static_cast<std::int32_t>(u), static_cast<std::int32_t>(v),
                             model.value(level), static_cast<std::int32_t>(level)});
      queue.push_back(v);
    }
  }
  return t;
}

// Relabels nodes with a random permutation so that id tie-breaking behaves
// like uniform random priorities.
WeightedGraph randomized_tree_graph(const TreeSample& t, Rng& rng, int* root_out) {
  std::vector<std::int32_t> perm(t.nodes);
  for (int i = 0; i < t.nodes; ++i) perm[i] = i;
  rng.shuffle(std::span<std::int32_t>(perm));
  std::vector<Edge> edges = t.edges;
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  *root_out = perm[0];
  return WeightedGraph(t.nodes, std::move(edges));
}

}  // namespace

RootWeightResult expected_root_weight(double d, const WeightModel& model, RootWeightMode mode,
                                      std::int64_t samples, std::uint64_t seed) {
  if (!(d >= 0)) throw std::invalid_argument("expected_root_weight: d must be >= 0");
  RootWeightResult res;
  if (mode == RootWeightMode::Analytic) {
    const auto fp = solve_tree_fixed_point(d, model);
    const auto probs = root_match_probabilities(fp, model);
    for (int k = 0; k < model.size(); ++k) res.value += model.value(k) / 2.0 * probs[k];
    res.approximate = d >= 1.0;  // giant component; tree approximation degraded
    return res;
  }
  if (samples <= 0) throw std::invalid_argument("expected_root_weight: samples must be > 0");
  const int max_nodes = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(s));
    TreeSample t = sample_tree(d, model, rng, max_nodes);
    while (t.overflow) {
      ++res.resampled;
      t = sample_tree(d, model, rng, max_nodes);
    }
    double x = 0.0;
    if (t.nodes > 1) {
      int root = -1;
      const WeightedGraph g = randomized_tree_graph(t, rng, &root);
      const MatchingOutcome m = greedy_match(g);
      if (m.partner[root] != -1) {
        for (const auto& e : m.matched_edges) {
          if (e.u == root || e.v == root) {
            x = e.w / 2.0;
            break;
          }
        }
      }
    }
    sum += x;
    sum2 += x * x;
  }
  res.value = sum / samples;
  const double var = std::max(0.0, sum2 / samples - res.value * res.value);
  res.std_error = std::sqrt(var / samples);
  res.approximate = res.resampled > 0;
  return res;
}

ProposalFrequency measure_proposal_frequencies(double d, const WeightModel& model,
                                               std::int64_t samples, std::uint64_t seed) {
  // The child's subtree plus a pendant parent whose only neighbor is the
  // child: the parent proposes to the child at every round, so the child
  // matches it if and only if the child ever proposes back.
  ProposalFrequency out;
  out.freq.assign(model.size(), 0.0);
  out.std_error.assign(model.size(), 0.0);
  const int max_nodes = 100000;
  for (int k = 0; k < model.size(); ++k) {
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
      Rng rng = make_stream(seed ^ (0x5EEDULL * (k + 1)), static_cast<std::uint64_t>(s));
      TreeSample t = sample_tree(d, model, rng, max_nodes);
      while (t.overflow) t = sample_tree(d, model, rng, max_nodes);
      const int parent = t.nodes;
      t.edges.push_back(Edge{0, static_cast<std::int32_t>(parent), model.value(k),
                             static_cast<std::int32_t>(k)});
      ++t.nodes;
      std::vector<std::int32_t> perm(t.nodes);
      for (int i = 0; i < t.nodes; ++i) perm[i] = i;
      rng.shuffle(std::span<std::int32_t>(perm));
      std::vector<Edge> edges = t.edges;
      for (auto& e : edges) {
        e.u = perm[e.u];
        e.v = perm[e.v];
      }
      const WeightedGraph g(t.nodes, std::move(edges));
      const MatchingOutcome m = greedy_match(g);
      if (m.partner[perm[0]] == perm[parent]) ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    out.freq[k] = p;
    out.std_error[k] = std::sqrt(p * (1.0 - p) / samples);
  }
  return out;
}

std::vector<PrCurvePoint> pr_curve_gnp(std::span<const double> d_grid, int n,
                                       const WeightModel& model, int seeds_per_point,
                                       std::uint64_t seed, int workers) {
  (void)workers;
  std::vector<PrCurvePoint> curve;
  curve.reserve(d_grid.size());
  for (const double d : d_grid) {
    PrCurvePoint pt;
    pt.d = d;
    pt.bound_per_node = neighbor_max_bound_expected_poisson(n, d, model) / n;
    if (d < 1.0) {
      pt.analytic_numerator = true;
      pt.greedy_per_node = expected_root_weight(d, model, RootWeightMode::Analytic).value;
      pt.ci_halfwidth = 0.0;
    } else {
      double sum = 0.0, sum2 = 0.0;
      for (int s = 0; s < seeds_per_point; ++s) {
        const auto g = generate_gnp(n, d / n, model, mix_seed(seed, s * 977 + 13));
        const double x = greedy_match(g).total_weight / n;
        sum += x;
        sum2 += x * x;
      }
      pt.greedy_per_node = sum / seeds_per_point;
      const double var =
          std::max(0.0, sum2 / seeds_per_point - pt.greedy_per_node * pt.greedy_per_node);
      pt.ci_halfwidth = 1.96 * std::sqrt(var / seeds_per_point);
    }
    pt.pr = pt.greedy_per_node / pt.bound_per_node;
    curve.push_back(pt);
  }
  return curve;
}

double pr_lower_bound_multiunit(double delta) {
  if (delta < 0) throw std::invalid_argument("pr_lower_bound_multiunit: delta must be >= 0");
  // Quantity-based decomposition: the single-unit line contributes the K=2
  // slope (4+3*delta)/9; the residual quantity-2 users form segments with
  // count law n/2^{t+2} and per-segment value a_t.
  const double slope = (4.0 + 3.0 * delta) / 9.0;
  const std::vector<double> a = short_line_values(delta);
  double seg = 0.0;
  for (int t = 2; t <= 100; ++t) seg += a[t] / std::pow(2.0, t + 2);
  const double greedy_per_node = slope + seg;
  const double optimal_per_node = 0.75 + 0.5 * delta;
  return greedy_per_node / optimal_per_node;
}

double steady_state_participants(double lambda, double mu, double gamma, int t_interval) {
  if (!(lambda > 0) || !(mu > 0) || gamma < 0 || t_interval < 1)
    throw std::invalid_argument("steady_state_participants: bad parameters");
  const double decay = gamma * std::exp(-mu * t_interval);
  if (decay >= 1.0) throw std::invalid_argument("steady_state_participants: no steady state");
  double arrivals = 0.0;
  for (int t = 0; t < t_interval; ++t) arrivals += lambda * std::exp(-mu * (t_interval - t));
  return arrivals / (1.0 - decay);
}

}  // namespace d2d
