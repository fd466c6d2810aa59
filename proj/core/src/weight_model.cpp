#include "d2dmatch/weight_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace d2d {

WeightModel::WeightModel(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.empty()) throw std::invalid_argument("weight model: empty support");
  if (values_.size() != probs_.size())
    throw std::invalid_argument("weight model: values/probs size mismatch");
  if (values_.front() < 0.0)
    throw std::invalid_argument("weight model: values must be non-negative");
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (!(values_[k] > values_[k - 1]))
      throw std::invalid_argument("weight model: values must be strictly increasing");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || p > 1.0)
      throw std::invalid_argument("weight model: probabilities must be in (0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weight model: probabilities must sum to 1");
  cum_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    acc += probs_[k];
    cum_[k] = acc;
  }
  cum_.back() = 1.0;
}

WeightModel WeightModel::uniform(std::vector<double> values) {
  std::vector<double> probs(values.size(), 1.0 / static_cast<double>(values.size()));
  return WeightModel(std::move(values), std::move(probs));
}

WeightModel WeightModel::uniform_spread(int k, double delta) {
  std::vector<double> values(k);
  for (int i = 0; i < k; ++i) values[i] = 1.0 + i * delta;
  return uniform(std::move(values));
}

double WeightModel::mean() const {
  double m = 0.0;
  for (int k = 0; k < size(); ++k) m += values_[k] * probs_[k];
  return m;
}

bool WeightModel::is_uniform(double tol) const {
  const double p = 1.0 / size();
  for (double q : probs_) {
    if (std::abs(q - p) > tol) return false;
  }
  return true;
}

int WeightModel::level_of(double w, double tol) const {
  for (int k = 0; k < size(); ++k) {
    if (std::abs(values_[k] - w) <= tol) return k;
  }
  return -1;
}

}  // namespace d2d
