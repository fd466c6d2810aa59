#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "d2dmatch/analytics.hpp"
#include "d2dmatch/bounds.hpp"
#include "d2dmatch/generators.hpp"
#include "d2dmatch/greedy.hpp"

using namespace d2d;

namespace {
const WeightModel k2_12 = WeightModel::uniform({1.0, 2.0});
}

TEST_CASE("K=2 recurrence coefficients and slope") {
  const auto rec = linear_recurrence(k2_12);
  CHECK(rec.constant == doctest::Approx(1.75));
  REQUIRE(rec.lags.size() == 2);
  CHECK(rec.lags[0].first == 2);
  CHECK(rec.lags[0].second == doctest::Approx(0.75));
  CHECK(rec.lags[1].first == 3);
  CHECK(rec.lags[1].second == doctest::Approx(0.25));
  CHECK(rec.coefficient_sum() == doctest::Approx(1.0));
  CHECK(rec.slope == doctest::Approx(7.0 / 9.0));
}

TEST_CASE("K=2 coefficients agree with the uniform-K closed form") {
  // beta_k = (K-1)^{K-k} (K+1)^{k-1} / K^K and gamma_k = K^{-(k+1)} sum_i i*C(i-1,k-1)
  const double beta1 = std::pow(1.0, 1) * std::pow(3.0, 0) / 4.0;
  const double beta2 = std::pow(1.0, 0) * std::pow(3.0, 1) / 4.0;
  CHECK(beta1 == doctest::Approx(0.25));
  CHECK(beta2 == doctest::Approx(0.75));
  const double gamma1 = (1 * 1 + 2 * 1) / std::pow(2.0, 2);
  const double gamma2 = (2 * 1) / std::pow(2.0, 3);
  const auto rec = linear_recurrence(k2_12);
  CHECK(rec.constant == doctest::Approx(beta1 * 1.0 + beta2 * 2.0));
  CHECK(rec.lags[0].second == doctest::Approx(gamma1));
  CHECK(rec.lags[1].second == doctest::Approx(gamma2));
}

TEST_CASE("K=3 uniform recurrence matches the expanded product form") {
  const auto rec = linear_recurrence(WeightModel::uniform({1.0, 2.0, 3.0}));
  const double p = 1.0 / 3.0;
  // expanded case analysis for three weight levels
  const double c1 = p * (p * p + p);
  const double c2 = p * (p + p) * (p + 1);
  const double c3 = p * (p * p + p + p + 1);
  CHECK(rec.constant == doctest::Approx(c1 * 1.0 + c2 * 2.0 + c3 * 3.0).epsilon(1e-12));
  REQUIRE(rec.lags.size() == 3);
  CHECK(rec.lags[0].second == doctest::Approx(p * p + p * p + p * p + p).epsilon(1e-12));
  CHECK(rec.lags[1].second ==
        doctest::Approx(p * p * p + p * p + p * p * p + p * p).epsilon(1e-12));
  CHECK(rec.lags[2].second == doctest::Approx(p * p * p).epsilon(1e-12));
  CHECK(rec.coefficient_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-uniform distributions with K >= 3 are unsupported") {
  CHECK_THROWS_AS(linear_recurrence(WeightModel({1.0, 2.0, 3.0}, {0.2, 0.3, 0.5})),
                  std::invalid_argument);
  CHECK_NOTHROW(linear_recurrence(WeightModel({1.0, 2.0}, {0.3, 0.7})));
}

TEST_CASE("iterated sequence converges to the slope") {
  const auto rec = linear_recurrence(k2_12);
  // exact initials a_1 = 0, a_2 = E[w]
  const std::vector<double> initials{0.0, k2_12.mean()};
  const int n = 10000;
  const double an = iterate_recurrence(rec, initials, n);
  CHECK(an / n == doctest::Approx(rec.slope).epsilon(1e-3));
}

TEST_CASE("small-line enumeration matches the recurrence initial segment") {
  // a_3 = E[max(w1, w2)] under left priority
  const double a3 = exact_line_greedy_mean(3, k2_12);
  CHECK(a3 == doctest::Approx(0.25 * 1.0 + 0.75 * 2.0));
  // recurrence reproduces the enumerated values once past the initials
  const auto rec = linear_recurrence(k2_12);
  const std::vector<double> initials{0.0, k2_12.mean()};
  for (int n = 3; n <= 9; ++n) {
    CHECK(iterate_recurrence(rec, initials, n) ==
          doctest::Approx(exact_line_greedy_mean(n, k2_12)).epsilon(1e-12));
  }
}

TEST_CASE("line slope matches simulation at n = 1e5") {
  const auto g = generate_line(100000, k2_12, 12345);
  const double per_user = greedy_match(g, TieRule::LowId).total_weight / 100000;
  CHECK(per_user == doctest::Approx(7.0 / 9.0).epsilon(0.01));
}

TEST_CASE("slopes track simulation across weight models") {
  const int n = 100000;
  const std::vector<WeightModel> models{
      WeightModel({1.0, 3.0}, {0.3, 0.7}),          // K=2, skewed
      WeightModel::uniform({1.0, 2.0, 3.0}),        // K=3 uniform
      WeightModel::uniform({0.5, 1.0, 2.0, 4.0}),   // K=4 uniform
  };
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const double slope = linear_recurrence(models[mi]).slope;
    double mean = 0.0;
    const int seeds = 4;
    for (int s = 0; s < seeds; ++s) {
      const auto g = generate_line(n, models[mi], 5000 + 17 * mi + s);
      mean += greedy_match(g, TieRule::LowId).total_weight / n;
    }
    mean /= seeds;
    CHECK(mean == doctest::Approx(slope).epsilon(0.005));
  }
}

TEST_CASE("linear ratio bounds") {
  // near-equal weights, uniform two-level: 8/9
  CHECK(pr_lower_bound_linear(WeightModel::uniform({1.0, 1.0 + 1e-9})) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-6));
  // V = (1, 2): slope (7/9) over per-user bound (5/6)
  CHECK(pr_lower_bound_linear(k2_12) == doctest::Approx((7.0 / 9.0) / (5.0 / 6.0)));
  // uniform-K similar-weight closed form and its limit
  for (int k = 2; k <= 6; ++k) {
    const double similar = pr_lower_bound_linear_similar_weights(k);
    CHECK(similar == doctest::Approx(1.0 - std::pow((k - 1.0) / (k + 1.0), k)));
    const auto m = WeightModel::uniform_spread(k, 1e-7 / k);
    CHECK(pr_lower_bound_linear(m) == doctest::Approx(similar).epsilon(1e-5));
  }
  CHECK(pr_lower_bound_linear_similar_weights(40) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-2));
}

TEST_CASE("grid recurrence constants") {
  for (double delta : {0.0, 0.5, 2.0}) {
    if (delta == 0.0) continue;  // degenerate support handled by the bound itself
    const auto rec = grid_recurrence(WeightModel::uniform({1.0, 1.0 + delta}));
    CHECK(rec.constant == doctest::Approx((19 + 15 * delta) / 16.0));
    REQUIRE(rec.lags.size() == 3);
    CHECK(rec.lags[0].second == doctest::Approx(0.25));
    CHECK(rec.lags[1].second == doctest::Approx(0.625));
    CHECK(rec.lags[2].second == doctest::Approx(0.125));
    CHECK(rec.slope == doctest::Approx((19 + 15 * delta) / 30.0));
  }
}

TEST_CASE("grid step-3 constant reproduces the segment sum") {
  // independent re-derivation: iterate a_t directly and sum the segment law
  auto direct = [](double delta) {
    std::vector<double> a(101, 0.0);
    a[2] = (2 + delta) / 2.0;
    if (a.size() > 3) a[3] = (4 + 3 * delta) / 4.0;
    for (int t = 4; t <= 100; ++t)
      a[t] = (4 + 3 * delta) / 4.0 + 0.75 * a[t - 2] + 0.25 * a[t - 3];
    const double pm = 4.0 / 15.0;
    double s = 0.0;
    for (int t = 2; t <= 100; ++t) s += std::pow(1 - pm, t) * pm * pm * a[t];
    return s;
  };
  for (double delta : {0.2, 1.0, 3.0}) {
    CHECK(grid_step3_constant(delta) == doctest::Approx(direct(delta)).epsilon(1e-12));
  }
  CHECK(grid_step3_constant(0.0) == doctest::Approx(0.287924).epsilon(1e-4));
  // linear in delta with the printed coefficients
  const double c0 = grid_step3_constant(0.0);
  const double c1 = grid_step3_constant(1.0) - c0;
  CHECK(c0 == doctest::Approx(0.288).epsilon(2e-3));
  CHECK(c1 == doctest::Approx(0.1967).epsilon(2e-3));
}

TEST_CASE("grid ratio bound endpoints") {
  CHECK(pr_lower_bound_grid(1e-12) == doctest::Approx(0.9213).epsilon(5e-4));
  CHECK(pr_lower_bound_grid(1e9) == doctest::Approx(0.6967 / 0.9375).epsilon(1e-3));
  // decreasing in delta
  double prev = pr_lower_bound_grid(0.0);
  for (double delta : {0.5, 1.0, 2.0, 10.0}) {
    const double cur = pr_lower_bound_grid(delta);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("printed grid proposal recursion values") {
  const auto y = grid_proposal_probabilities();
  CHECK(y.y2_right == doctest::Approx(1.0));
  CHECK(y.y1_right == doctest::Approx(0.25));
  // the printed left recursion gives 1/2 and 3/16 (the grid analysis itself
  // uses 2/3 and 4/15; the acceptance probe reports which one simulation backs)
  CHECK(y.y2_left == doctest::Approx(0.5));
  CHECK(y.y1_left == doctest::Approx(3.0 / 16.0));
}

TEST_CASE("tree fixed point: degenerate and boundary behavior") {
  const auto sol = solve_tree_fixed_point(0.0, k2_12);
  CHECK(sol.y[0] == doctest::Approx(1.0));
  CHECK(sol.y[1] == doctest::Approx(1.0));

  // at y = 1 the top-level equation evaluates to (1 - e^{-p d})/(p d) < 1
  const double d = 0.7;
  const std::vector<double> none(2, 0.0);
  const double rhs1 = tree_fixed_point_rhs(1.0, d, k2_12, 1, none);
  const double pd = 0.5 * d;
  CHECK(rhs1 == doctest::Approx((1.0 - std::exp(-pd)) / pd).epsilon(1e-9));
  CHECK(rhs1 < 1.0);
}

TEST_CASE("tree fixed point: residuals and uniqueness") {
  for (double d : {0.2, 0.5, 0.9, 2.0, 5.0}) {
    const auto sol = solve_tree_fixed_point(d, k2_12);
    for (int k = 0; k < 2; ++k) {
      CHECK(sol.residuals[k] < 1e-10);
      CHECK(sol.y[k] > 0.0);
      CHECK(sol.y[k] <= 1.0);
    }
    // sign of rhs(y) - y changes exactly once over a fine grid
    for (int k = 1; k >= 0; --k) {
      int changes = 0;
      double prev = tree_fixed_point_rhs(1e-9, d, k2_12, k, sol.y) - 1e-9;
      for (int i = 1; i <= 1000; ++i) {
        const double y = i / 1000.0;
        const double f = tree_fixed_point_rhs(y, d, k2_12, k, sol.y) - y;
        if ((f > 0) != (prev > 0)) ++changes;
        prev = f;
      }
      CHECK(changes == 1);
    }
  }
}

TEST_CASE("proposal probabilities match the pendant-parent frequencies") {
  // The fixed point is a mean-field description: measured offsets of ~1.5e-3
  // remain at d = 0.5 (correlated priorities across sibling subtrees), so the
  // comparison allows 1e-3 plus sampling error.
  const double d = 0.5;
  const auto sol = solve_tree_fixed_point(d, k2_12);
  const std::int64_t samples = 600000;
  const auto freq = measure_proposal_frequencies(d, k2_12, samples, 2718);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(freq.freq[k] - sol.y[k]) < 1e-3 + 3.0 * freq.std_error[k]);
  }
}

TEST_CASE("analytic root weight agrees with the tree Monte Carlo") {
  for (double d : {0.2, 0.5, 0.9}) {
    const auto analytic = expected_root_weight(d, k2_12, RootWeightMode::Analytic);
    CHECK(!analytic.approximate);
    const auto mc = expected_root_weight(d, k2_12, RootWeightMode::MonteCarlo, 200000, 31);
    CHECK(std::abs(analytic.value - mc.value) < 3.0 * mc.std_error + 1.5e-3);
  }
  CHECK(expected_root_weight(1e-9, k2_12, RootWeightMode::Analytic).value ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(expected_root_weight(2.0, k2_12, RootWeightMode::Analytic).approximate);
}

TEST_CASE("root match probabilities are a sub-distribution") {
  for (double d : {0.3, 1.0, 4.0}) {
    const auto sol = solve_tree_fixed_point(d, k2_12);
    const auto probs = root_match_probabilities(sol, k2_12);
    double total = 0.0;
    for (double p : probs) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total <= 1.0);
  }
}

TEST_CASE("gnp ratio curve behavior at the ends") {
  const std::vector<double> d_grid{0.01, 0.5};
  const auto curve = pr_curve_gnp(d_grid, 10000, k2_12, 3, 5);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].pr > 0.99);
  CHECK(curve[0].analytic_numerator);
  CHECK(curve[1].pr > 0.8);
  CHECK(curve[1].pr < 1.0);
}

TEST_CASE("multi-unit ratio bound") {
  const double at0 = pr_lower_bound_multiunit(1e-12);
  CHECK(at0 == doctest::Approx(0.604 / 0.75).epsilon(2e-3));
  CHECK(pr_lower_bound_multiunit(1e12) == doctest::Approx(0.433 / 0.5).epsilon(2e-3));
  double prev = at0;
  for (double delta : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double cur = pr_lower_bound_multiunit(delta);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("steady-state participants closed form") {
  CHECK(steady_state_participants(20.0, 0.3, 0.0, 1) == doctest::Approx(20 * std::exp(-0.3)));
  CHECK(steady_state_participants(20.0, 1e-9, 0.0, 7) == doctest::Approx(140.0).epsilon(1e-6));
  const double m = steady_state_participants(20.0, 0.1, 0.5, 5);
  double arrivals = 0.0;
  for (int t = 0; t < 5; ++t) arrivals += 20 * std::exp(-0.1 * (5 - t));
  CHECK(m == doctest::Approx(arrivals / (1 - 0.5 * std::exp(-0.5))));
  CHECK_THROWS_AS(steady_state_participants(-1, 0.1, 0.0, 1), std::invalid_argument);
}
