#pragma once

#include <cstdint>
#include <vector>

#include "d2dmatch/weight_model.hpp"

namespace d2d {

// Arrival/departure market simulation: lambda users per minute arrive uniform
// on a disk of radius R, stay Exp(mu)-distributed minutes, and every T minutes
// the geometric graph over active, still-willing users is matched greedily.
// Survivors of a round stay willing with probability gamma.
struct DynamicParams {
  double lambda = 20.0;
  double mu = 0.1;
  double gamma = 0.0;
  int interval_minutes = 5;  // T
  double range_l = 100.0;
  double radius_r = 1000.0;
  int horizon_minutes = 2000;
  std::uint64_t seed = 0;
};

struct DynamicResult {
  std::vector<double> epoch_weights;     // total matched weight per epoch
  std::vector<int> epoch_participants;   // active-and-willing count per epoch
  double time_avg_weight = 0.0;          // sum of epoch weights / horizon
  double mean_participants = 0.0;        // after burn-in
  int burn_in_epochs = 0;
};

DynamicResult run_dynamic(const DynamicParams& params, const WeightModel& model);

}  // namespace d2d
