#include "d2dmatch/dynamic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "d2dmatch/graph.hpp"
#include "d2dmatch/greedy.hpp"
#include "d2dmatch/rng.hpp"

namespace d2d {

namespace {

struct User {
  Point pos;
  double death_time;
  bool willing;
};

}  // namespace

DynamicResult run_dynamic(const DynamicParams& params, const WeightModel& model) {
  if (!(params.lambda > 0)) throw std::invalid_argument("run_dynamic: lambda must be > 0");
  if (!(params.mu > 0)) throw std::invalid_argument("run_dynamic: mu must be > 0");
  if (params.gamma < 0 || params.gamma >= 1)
    throw std::invalid_argument("run_dynamic: gamma must be in [0, 1)");
  if (params.interval_minutes < 1) throw std::invalid_argument("run_dynamic: T must be >= 1");
  if (params.horizon_minutes < params.interval_minutes)
    throw std::invalid_argument("run_dynamic: horizon shorter than one interval");

  Rng rng = make_stream(params.seed, 4);
  std::vector<User> users;
  DynamicResult res;

  const int whole = static_cast<int>(std::floor(params.lambda));
  const double frac = params.lambda - whole;

  // Matching epochs at t = T, 2T, ...; arrivals in batches at each minute,
  // departures are continuous via the stored death times.
  for (int minute = 0; minute < params.horizon_minutes; ++minute) {
    int arrivals = whole + ((frac > 0 && rng.bernoulli(frac)) ? 1 : 0);
    for (int a = 0; a < arrivals; ++a) {
      const double rad = params.radius_r * std::sqrt(rng.uniform01());
      const double ang = 2.0 * M_PI * rng.uniform01();
      users.push_back(User{Point{rad * std::cos(ang), rad * std::sin(ang)},
                           minute + rng.exponential(params.mu), true});
    }
    const int now = minute + 1;
    if (now % params.interval_minutes != 0) continue;

    // Active participants of this round.
    std::vector<int> active;
    for (int i = 0; i < static_cast<int>(users.size()); ++i) {
      if (users[i].willing && users[i].death_time > now) active.push_back(i);
    }
    res.epoch_participants.push_back(static_cast<int>(active.size()));

    double weight = 0.0;
    if (active.size() >= 2) {
      // Geometric graph over the active users.
      std::vector<Point> pts(active.size());
      for (std::size_t i = 0; i < active.size(); ++i) pts[i] = users[active[i]].pos;
      std::vector<Edge> edges;
      const double l2 = params.range_l * params.range_l;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
          if (dx * dx + dy * dy < l2) {
            const int level = model.sample(rng);
            edges.push_back(Edge{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                                 model.value(level), static_cast<std::int32_t>(level)});
          }
        }
      }
      WeightedGraph g(static_cast<int>(active.size()), std::move(edges), std::nullopt,
                      std::move(pts));
      weight = greedy_match(g).total_weight;
    }
    res.epoch_weights.push_back(weight);

    // Participants of this round stay willing with probability gamma.
    for (int idx : active) users[idx].willing = rng.bernoulli(params.gamma);

    // Compact departed users occasionally.
    if (users.size() > 4096) {
      std::vector<User> keep;
      keep.reserve(users.size());
      for (const auto& u : users) {
        if (u.death_time > now && u.willing) keep.push_back(u);
      }
      users.swap(keep);
    }
  }

  double total = 0.0;
  for (double w : res.epoch_weights) total += w;
  res.time_avg_weight = total / params.horizon_minutes;

  res.burn_in_epochs = static_cast<int>(res.epoch_participants.size() / 5);
  double m = 0.0;
  int cnt = 0;
  for (std::size_t e = res.burn_in_epochs; e < res.epoch_participants.size(); ++e) {
    m += res.epoch_participants[e];
    ++cnt;
  }
  res.mean_participants = cnt > 0 ? m / cnt : 0.0;
  return res;
}

}  // namespace d2d
