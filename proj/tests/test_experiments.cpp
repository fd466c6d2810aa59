#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "d2dmatch/analytics.hpp"
#include "d2dmatch/dynamic.hpp"
#include "d2dmatch/experiments.hpp"

using namespace d2d;

TEST_CASE("three-edge path ratio against the exact optimum") {
  // near-equal two-level weights with the footnoted id ordering (left priority)
  ExperimentConfig cfg;
  cfg.generator.family = Family::Line;
  cfg.generator.n = 4;
  cfg.model = WeightModel::uniform({1.0, 1.0 + 1e-6});
  cfg.samples = 4000;
  cfg.seed = 99;
  cfg.baseline = Baseline::Exhaustive;
  cfg.tie = TieRule::LowId;
  const auto rep = estimate_pr(cfg);
  CHECK(rep.pr_ratio_of_means >= 0.875 - 3 * rep.pr_ratio_ci);
  CHECK(rep.pr_ratio_of_means <= 0.89);
  // exact baseline dominates instance-wise
  for (std::size_t s = 0; s < rep.greedy_totals.size(); ++s) {
    CHECK(rep.greedy_totals[s] <= rep.baseline_totals[s] + 1e-12);
    CHECK(rep.greedy_totals[s] >= 0.5 * rep.baseline_totals[s] - 1e-12);
  }
}

TEST_CASE("reports are reproducible and order-independent") {
  ExperimentConfig cfg;
  cfg.generator.family = Family::Gnp;
  cfg.generator.n = 400;
  cfg.generator.d = 1.5;
  cfg.model = WeightModel::uniform({1.0, 2.0});
  cfg.samples = 64;
  cfg.seed = 4242;
  cfg.baseline = Baseline::NeighborMax;

  cfg.workers = 1;
  const auto a = estimate_pr(cfg);
  cfg.workers = 4;
  const auto b = estimate_pr(cfg);
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.pr_ratio_of_means == b.pr_ratio_of_means);
  REQUIRE(a.greedy_totals.size() == b.greedy_totals.size());
  for (std::size_t s = 0; s < a.greedy_totals.size(); ++s) {
    CHECK(a.greedy_totals[s] == b.greedy_totals[s]);
    CHECK(a.baseline_totals[s] == b.baseline_totals[s]);
  }

  ExperimentConfig other = cfg;
  other.seed = 4243;
  CHECK(other.config_hash() == other.config_hash());
  CHECK(other.config_hash() != cfg.config_hash());
}

TEST_CASE("incompatible baselines are rejected") {
  ExperimentConfig cfg;
  cfg.generator.family = Family::Gnp;
  cfg.generator.n = 60;
  cfg.generator.d = 3.0;
  cfg.samples = 3;
  cfg.baseline = Baseline::PathDp;
  CHECK_THROWS_AS(estimate_pr(cfg), std::invalid_argument);

  ExperimentConfig multi;
  multi.generator.family = Family::Line;
  multi.generator.n = 10;
  multi.samples = 2;
  multi.baseline = Baseline::MultiunitBound;
  CHECK_THROWS_AS(estimate_pr(multi), std::invalid_argument);
}

TEST_CASE("ratio of means versus mean of ratios") {
  ExperimentConfig cfg;
  cfg.generator.family = Family::Line;
  cfg.generator.n = 30;
  cfg.model = WeightModel::uniform({1.0, 2.0});
  cfg.samples = 200;
  cfg.seed = 7;
  cfg.baseline = Baseline::PathDp;
  const auto rep = estimate_pr(cfg);
  CHECK(rep.pr_ratio_of_means > 0.7);
  CHECK(rep.pr_ratio_of_means < 1.0);
  CHECK(rep.pr_mean_of_ratios > 0.7);
  CHECK(rep.metrics.at("pr_per_instance").max <= 1.0 + 1e-12);
}

TEST_CASE("rounds measurement and log fit") {
  RoundsConfig cfg;
  cfg.family = Family::Line;
  cfg.sizes = {1000, 4000, 16000, 64000};
  cfg.seeds_per_size = 10;
  cfg.seed = 3;
  const auto rep = measure_rounds(cfg);
  REQUIRE(rep.sizes.size() == 4);
  CHECK(rep.rounds[0].mean >= 1.0);
  CHECK(rep.log_fit_c > 0.0);
  CHECK(rep.log_fit_r2 > 0.8);
  for (std::size_t i = 1; i < rep.rounds_over_n.size(); ++i) {
    CHECK(rep.rounds_over_n[i] < rep.rounds_over_n[i - 1]);
  }

  RoundsConfig two;
  two.family = Family::Line;
  two.sizes = {2};
  two.seeds_per_size = 3;
  const auto r2 = measure_rounds(two);
  CHECK(r2.rounds[0].mean == doctest::Approx(1.0));

  RoundsConfig bad;
  bad.family = Family::Gnp;
  bad.sizes = {100};
  bad.gnp_d = 5.0;  // 2/max p = 4 with the default model
  CHECK_THROWS_AS(measure_rounds(bad), std::invalid_argument);
}

TEST_CASE("caching case study trends") {
  const auto recs = synthetic_locations(500, 300.0, 1, 11);
  const std::vector<double> l_grid{20.0, 60.0, 120.0};
  const auto rep = run_caching_case_study(recs, l_grid, 10, 3, 6, 21);
  REQUIRE(rep.points.size() == 3);
  // more range, more neighbors, more matched weight
  CHECK(rep.points[0].mean_degree < rep.points[2].mean_degree);
  CHECK(rep.points[0].real_per_user <=
        rep.points[2].real_per_user + rep.points[0].real_ci + rep.points[2].real_ci);
  // the gnp twin sits close to the caching instance at matched degree
  const auto& p = rep.points[2];
  CHECK(std::abs(p.gnp_per_user - p.real_per_user) < 0.35);
  // weights live on even symmetric differences
  for (double v : rep.weight_support) {
    CHECK((v == 2.0 || v == 4.0 || v == 6.0));
  }
}

TEST_CASE("dynamic steady state approaches the closed form") {
  DynamicParams params;
  params.lambda = 20.0;
  params.mu = 0.1;
  params.gamma = 0.5;
  params.interval_minutes = 5;
  params.range_l = 100.0;
  params.radius_r = 1000.0;
  params.horizon_minutes = 4000;
  params.seed = 17;
  const auto res = run_dynamic(params, WeightModel::uniform({1.0, 2.0}));
  const double closed = steady_state_participants(20.0, 0.1, 0.5, 5);
  CHECK(res.mean_participants == doctest::Approx(closed).epsilon(0.03));
  CHECK(res.time_avg_weight > 0.0);
}

TEST_CASE("interval sweep covers the parameter grid") {
  const std::vector<double> mu{0.2};
  const std::vector<double> gamma{0.0, 0.5};
  const std::vector<int> t_grid{1, 4};
  const auto rep =
      run_interval_sweep(10.0, mu, gamma, t_grid, 500.0, 100.0, 600,
                         WeightModel::uniform({1.0, 2.0}), 5);
  CHECK(rep.points.size() == 4);
  for (const auto& p : rep.points) {
    CHECK(p.steady_state_m > 0.0);
    CHECK(p.mean_participants > 0.0);
  }
}
