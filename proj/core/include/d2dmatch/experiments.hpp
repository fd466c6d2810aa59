#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2dmatch/generators.hpp"
#include "d2dmatch/graph_io.hpp"
#include "d2dmatch/greedy.hpp"
#include "d2dmatch/weight_model.hpp"

namespace d2d {

enum class Baseline {
  Decomposition,   // per-instance decomposition bound (paths)
  NeighborMax,     // per-instance half-max-neighbor bound
  NeighborMaxExpected,  // expectation over the weight distribution, actual degrees
  PathDp,
  TreeDp,
  Exhaustive,
  MultiunitBound,
};

const char* baseline_name(Baseline b);
Baseline baseline_from_name(const std::string& name);

struct MetricStats {
  double mean = 0.0;
  double std_error = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width
  double min = 0.0;
  double max = 0.0;
  std::int64_t count = 0;
};

MetricStats summarize(std::span<const double> xs);

struct ExperimentConfig {
  GeneratorSpec generator;
  WeightModel model = WeightModel::uniform({1.0, 2.0});
  int samples = 30;
  std::uint64_t seed = 0;
  Baseline baseline = Baseline::Decomposition;
  TieRule tie = TieRule::HighId;
  bool multiunit = false;
  int workers = 0;  // 0 -> D2DMATCH_WORKERS env or 1

  std::string canonical_string() const;
  std::uint64_t config_hash() const;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::map<std::string, MetricStats> metrics;
  // Ratio-of-means estimator of the average performance ratio (matches the
  // definition as a ratio of expectations) plus the mean-of-ratios companion.
  double pr_ratio_of_means = 0.0;
  double pr_ratio_ci = 0.0;
  double pr_mean_of_ratios = 0.0;
  double pr_mean_of_ratios_ci = 0.0;
  std::vector<double> greedy_totals;    // raw per-sample records
  std::vector<double> baseline_totals;

  std::string to_json() const;
};

// Samples `config.samples` instances, matches each greedily, evaluates the
// baseline on the same instance and aggregates both PR estimators.
ExperimentReport estimate_pr(const ExperimentConfig& config);

struct RoundsConfig {
  Family family = Family::Line;
  std::vector<std::int64_t> sizes;  // node counts (grid: value is rounded to a square)
  double gnp_d = 0.5;
  WeightModel model = WeightModel::uniform({1.0, 2.0});
  int seeds_per_size = 30;
  std::uint64_t seed = 0;
  TieRule tie = TieRule::HighId;
  int workers = 0;
};

struct RoundsReport {
  std::vector<std::int64_t> sizes;
  std::vector<MetricStats> rounds;     // per size
  double log_fit_c = 0.0;              // rounds ~ intercept + c * ln(n)
  double log_fit_intercept = 0.0;
  double log_fit_r2 = 0.0;
  std::vector<double> rounds_over_n;   // mean rounds / n per size
  std::string to_json() const;
  std::string to_csv() const;
};

// Mean rounds-to-termination across sizes, with a least-squares fit of the
// means against ln(n). For gnp the applicability condition d < 2/max_k p_k is
// enforced.
RoundsReport measure_rounds(const RoundsConfig& config);

struct CaseStudyPoint {
  double range_l = 0.0;
  double mean_degree = 0.0;
  double real_per_user = 0.0;     // caching graph, matched weight per user
  double real_ci = 0.0;
  double gnp_per_user = 0.0;      // matched G(n, d/n) with the empirical weights
  double gnp_ci = 0.0;
};

struct CaseStudyReport {
  std::vector<CaseStudyPoint> points;
  std::vector<double> weight_support;     // empirical caching weight support
  std::vector<double> weight_probs;
  std::string to_json() const;
  std::string to_csv() const;
};

// Builds caching graphs over the given locations for each range L, matches
// them, and compares against G(n, d(L)/n) with the fitted weight model.
CaseStudyReport run_caching_case_study(const std::vector<LocationRecord>& records,
                                       std::span<const double> l_grid, int library_size,
                                       int cache_size, int samples, std::uint64_t seed,
                                       int workers = 0);

struct FailureSweepPoint {
  double range_l = 0.0;
  double no_failure = 0.0;  // per-user matched weight
  double type1 = 0.0;       // with distance failures only
  double type2 = 0.0;       // with interference failures only
  double no_failure_ci = 0.0, type1_ci = 0.0, type2_ci = 0.0;
};

struct FailureSweepReport {
  std::vector<FailureSweepPoint> points;
  std::string to_json() const;
  std::string to_csv() const;
};

FailureSweepReport run_failure_sweep(int n, double radius_r, std::span<const double> l_grid,
                                     double delta1, double delta2, const WeightModel& model,
                                     int samples, std::uint64_t seed, int workers = 0);

struct IntervalSweepPoint {
  double gamma = 0.0;
  double mu = 0.0;
  int t_interval = 0;
  double time_avg_weight = 0.0;
  double mean_participants = 0.0;
  double steady_state_m = 0.0;  // closed form
};

struct IntervalSweepReport {
  std::vector<IntervalSweepPoint> points;
  std::string to_json() const;
  std::string to_csv() const;
};

IntervalSweepReport run_interval_sweep(double lambda, std::span<const double> mu_set,
                                       std::span<const double> gamma_set,
                                       std::span<const int> t_grid, double radius_r,
                                       double range_l, int horizon_minutes,
                                       const WeightModel& model, std::uint64_t seed,
                                       int workers = 0);

// Worker count resolution: explicit value, else D2DMATCH_WORKERS, else 1.
int resolve_workers(int requested);

// Runs fn(sample_index) on a pool; per-sample results must be written to
// index-addressed storage so that aggregation is order-independent.
void parallel_for_samples(std::int64_t samples, int workers,
                          const std::function<void(std::int64_t)>& fn);

}  // namespace d2d
