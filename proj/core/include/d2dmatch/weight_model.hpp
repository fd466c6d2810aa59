#pragma once

#include <span>
#include <vector>

#include "d2dmatch/rng.hpp"

namespace d2d {

// Discrete edge-weight distribution: support v_1 < v_2 < ... < v_K with
// probabilities p_k. Shared by the generators, the bounds and the analytics.
class WeightModel {
 public:
  WeightModel(std::vector<double> values, std::vector<double> probs);

  // Equal probabilities over the given support.
  static WeightModel uniform(std::vector<double> values);
  // Support {1, 1+delta, ..., 1+(K-1)delta} with equal probabilities.
  static WeightModel uniform_spread(int k, double delta);

  int size() const { return static_cast<int>(values_.size()); }
  double value(int k) const { return values_[k]; }
  double prob(int k) const { return probs_[k]; }
  // Cumulative probability of the first k+1 levels.
  double cum_prob(int k) const { return k < 0 ? 0.0 : cum_[k]; }
  std::span<const double> values() const { return values_; }
  std::span<const double> probs() const { return probs_; }

  double mean() const;
  bool is_uniform(double tol = 1e-12) const;

  // Support index sampled from the distribution.
  int sample(Rng& rng) const { return rng.discrete_cdf(cum_); }

  // Index of the support level equal to w, or -1.
  int level_of(double w, double tol = 0.0) const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> cum_;
};

}  // namespace d2d
