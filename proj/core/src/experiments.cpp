#include "d2dmatch/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "d2dmatch/analytics.hpp"
#include "d2dmatch/bounds.hpp"
#include "d2dmatch/dynamic.hpp"
#include "d2dmatch/exact.hpp"
#include "d2dmatch/rng.hpp"

namespace d2d {

const char* baseline_name(Baseline b) {
  switch (b) {
    case Baseline::Decomposition: return "decomposition";
    case Baseline::NeighborMax: return "neighbor_max";
    case Baseline::NeighborMaxExpected: return "neighbor_max_expected";
    case Baseline::PathDp: return "path_dp";
    case Baseline::TreeDp: return "tree_dp";
    case Baseline::Exhaustive: return "exhaustive";
    case Baseline::MultiunitBound: return "multiunit_bound";
  }
  return "?";
}

Baseline baseline_from_name(const std::string& name) {
  if (name == "decomposition") return Baseline::Decomposition;
  if (name == "neighbor_max") return Baseline::NeighborMax;
  if (name == "neighbor_max_expected") return Baseline::NeighborMaxExpected;
  if (name == "path_dp") return Baseline::PathDp;
  if (name == "tree_dp") return Baseline::TreeDp;
  if (name == "exhaustive") return Baseline::Exhaustive;
  if (name == "multiunit_bound") return Baseline::MultiunitBound;
  throw std::invalid_argument("unknown baseline: " + name);
}

MetricStats summarize(std::span<const double> xs) {
  MetricStats st;
  st.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return st;
  double sum = 0.0;
  st.min = xs[0];
  st.max = xs[0];
  for (double x : xs) {
    sum += x;
    st.min = std::min(st.min, x);
    st.max = std::max(st.max, x);
  }
  st.mean = sum / xs.size();
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    const double var = ss / (xs.size() - 1);
    st.std_error = std::sqrt(var / xs.size());
    st.ci95 = 1.96 * st.std_error;
  }
  return st;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("D2DMATCH_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

void parallel_for_samples(std::int64_t samples, int workers,
                          const std::function<void(std::int64_t)>& fn) {
  workers = std::min<std::int64_t>(std::max(workers, 1), samples);
  if (workers <= 1) {
    for (std::int64_t s = 0; s < samples; ++s) fn(s);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t s = next.fetch_add(1);
        if (s >= samples) break;
        fn(s);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::string ExperimentConfig::canonical_string() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << "family=" << family_name(generator.family) << ";n=" << generator.n
     << ";side=" << generator.side << ";p=" << generator.p << ";d=" << generator.d
     << ";radius=" << generator.radius << ";range=" << generator.range
     << ";library=" << generator.library_size << ";cache=" << generator.cache_size << ";q=";
  for (int q : generator.quantity_set) ss << q << ",";
  ss << ";values=";
  for (double v : model.values()) ss << v << ",";
  ss << ";probs=";
  for (double p : model.probs()) ss << p << ",";
  ss << ";samples=" << samples << ";seed=" << seed << ";baseline=" << baseline_name(baseline)
     << ";tie=" << (tie == TieRule::HighId ? "id" : "left") << ";multiunit=" << multiunit;
  return ss.str();
}

std::uint64_t ExperimentConfig::config_hash() const {
  const std::string s = canonical_string();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

double evaluate_baseline(Baseline b, const WeightedGraph& g, const WeightModel& model) {
  switch (b) {
    case Baseline::Decomposition: return decomposition_bound_instance(g, model);
    case Baseline::NeighborMax: return neighbor_max_bound_instance(g);
    case Baseline::NeighborMaxExpected: return neighbor_max_bound_expected(g, model);
    case Baseline::PathDp: return optimal_path_dp(g).total_weight;
    case Baseline::TreeDp: return optimal_tree_dp(g).total_weight;
    case Baseline::Exhaustive: return optimal_exhaustive(g).total_weight;
    case Baseline::MultiunitBound: return multiunit_bound(g);
  }
  throw std::logic_error("bad baseline");
}

nlohmann::json stats_json(const MetricStats& st) {
  return {{"mean", st.mean}, {"std_error", st.std_error}, {"ci95", st.ci95},
          {"min", st.min},   {"max", st.max},             {"count", st.count}};
}

}  // namespace

ExperimentReport estimate_pr(const ExperimentConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("estimate_pr: samples must be >= 1");
  if (config.multiunit && config.generator.quantity_set.empty())
    throw std::invalid_argument("estimate_pr: multiunit run needs a quantity set");
  if (config.baseline == Baseline::MultiunitBound && !config.multiunit)
    throw std::invalid_argument("estimate_pr: multiunit_bound baseline needs --multiunit");

  ExperimentReport rep;
  rep.seed = config.seed;
  rep.config_hash = config.config_hash();
  rep.greedy_totals.assign(config.samples, 0.0);
  rep.baseline_totals.assign(config.samples, 0.0);

  const int workers = resolve_workers(config.workers);
  parallel_for_samples(config.samples, workers, [&](std::int64_t s) {
    const WeightedGraph g = config.generator.build(config.model, mix_seed(config.seed, s));
    const MatchingOutcome m = config.multiunit
                                  ? greedy_match_multiunit(g, config.tie)
                                  : greedy_match(g, config.tie);
    rep.greedy_totals[s] = m.total_weight;
    rep.baseline_totals[s] = evaluate_baseline(config.baseline, g, config.model);
  });

  const MetricStats gstats = summarize(rep.greedy_totals);
  const MetricStats bstats = summarize(rep.baseline_totals);
  rep.metrics["greedy_total"] = gstats;
  rep.metrics["baseline_total"] = bstats;

  const int n = config.samples;
  rep.pr_ratio_of_means = gstats.mean / bstats.mean;
  if (n > 1) {
    // Delta-method CI for the ratio of means.
    double cov = 0.0;
    for (int s = 0; s < n; ++s)
      cov += (rep.greedy_totals[s] - gstats.mean) * (rep.baseline_totals[s] - bstats.mean);
    cov /= (n - 1);
    const double vg = gstats.std_error * gstats.std_error * n;
    const double vb = bstats.std_error * bstats.std_error * n;
    const double r = rep.pr_ratio_of_means;
    const double var =
        (vg - 2.0 * r * cov + r * r * vb) / (bstats.mean * bstats.mean) / n;
    rep.pr_ratio_ci = 1.96 * std::sqrt(std::max(0.0, var));
  }
  std::vector<double> ratios(n);
  for (int s = 0; s < n; ++s) ratios[s] = rep.greedy_totals[s] / rep.baseline_totals[s];
  const MetricStats rstats = summarize(ratios);
  rep.metrics["pr_per_instance"] = rstats;
  rep.pr_mean_of_ratios = rstats.mean;
  rep.pr_mean_of_ratios_ci = rstats.ci95;
  return rep;
}

std::string ExperimentReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["pr_ratio_of_means"] = pr_ratio_of_means;
  j["pr_ratio_of_means_ci95"] = pr_ratio_ci;
  j["pr_mean_of_ratios"] = pr_mean_of_ratios;
  j["pr_mean_of_ratios_ci95"] = pr_mean_of_ratios_ci;
  for (const auto& [name, st] : metrics) j["metrics"][name] = stats_json(st);
  j["greedy_totals"] = greedy_totals;
  j["baseline_totals"] = baseline_totals;
  return j.dump(2);
}

RoundsReport measure_rounds(const RoundsConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("measure_rounds: empty size grid");
  if (config.family == Family::Gnp) {
    double pmax = 0.0;
    for (double p : config.model.probs()) pmax = std::max(pmax, p);
    if (!(config.gnp_d < 2.0 / pmax))
      throw std::invalid_argument(
          "measure_rounds: log-round regime needs d < 2/max_k p_k");
  }
  if (config.family != Family::Line && config.family != Family::Grid2d &&
      config.family != Family::Gnp)
    throw std::invalid_argument("measure_rounds: family must be line, grid2d or gnp");

  RoundsReport rep;
  const int workers = resolve_workers(config.workers);
  for (const std::int64_t size : config.sizes) {
    std::vector<double> rounds(config.seeds_per_size, 0.0);
    parallel_for_samples(config.seeds_per_size, workers, [&](std::int64_t s) {
      const std::uint64_t seed = mix_seed(config.seed, size * 10007 + s);
      WeightedGraph g = [&] {
        switch (config.family) {
          case Family::Line:
            return generate_line(static_cast<int>(size), config.model, seed);
          case Family::Grid2d: {
            const int side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(size))));
            return generate_grid2d(side, config.model, seed);
          }
          default:
            return generate_gnp(static_cast<int>(size), config.gnp_d / size, config.model, seed);
        }
      }();
      rounds[s] = greedy_match(g, config.tie).rounds;
    });
    const std::int64_t actual =
        config.family == Family::Grid2d
            ? static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(size)))) *
                  static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(size))))
            : size;
    rep.sizes.push_back(actual);
    rep.rounds.push_back(summarize(rounds));
  }

  // Least squares of mean rounds on ln(n).
  const std::size_t m = rep.sizes.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(static_cast<double>(rep.sizes[i]));
    const double y = rep.rounds[i].mean;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (denom > 0) {
    rep.log_fit_c = (m * sxy - sx * sy) / denom;
    rep.log_fit_intercept = (sy - rep.log_fit_c * sx) / m;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::log(static_cast<double>(rep.sizes[i]));
      const double y = rep.rounds[i].mean;
      const double fit = rep.log_fit_intercept + rep.log_fit_c * x;
      ss_res += (y - fit) * (y - fit);
      ss_tot += (y - ybar) * (y - ybar);
    }
    rep.log_fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  }
  for (std::size_t i = 0; i < m; ++i)
    rep.rounds_over_n.push_back(rep.rounds[i].mean / static_cast<double>(rep.sizes[i]));
  return rep;
}

std::string RoundsReport::to_json() const {
  nlohmann::json j;
  j["sizes"] = sizes;
  for (const auto& st : rounds) j["rounds"].push_back(stats_json(st));
  j["log_fit_c"] = log_fit_c;
  j["log_fit_intercept"] = log_fit_intercept;
  j["log_fit_r2"] = log_fit_r2;
  j["rounds_over_n"] = rounds_over_n;
  return j.dump(2);
}

std::string RoundsReport::to_csv() const {
  std::ostringstream ss;
  ss << "n,mean_rounds,ci95,rounds_over_n\n";
  ss.precision(12);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ss << sizes[i] << "," << rounds[i].mean << "," << rounds[i].ci95 << "," << rounds_over_n[i]
       << "\n";
  }
  return ss.str();
}

CaseStudyReport run_caching_case_study(const std::vector<LocationRecord>& records,
                                       std::span<const double> l_grid, int library_size,
                                       int cache_size, int samples, std::uint64_t seed,
                                       int workers) {
  if (records.size() < 2)
    throw std::invalid_argument("case study: need at least two location records");
  CaseStudyReport rep;
  const int n = static_cast<int>(records.size());
  const int w = resolve_workers(workers);

  for (const double l : l_grid) {
    std::vector<double> real_per_user(samples, 0.0);
    std::vector<double> degree(samples, 0.0);
    std::vector<std::vector<std::int64_t>> level_counts(samples);
    parallel_for_samples(samples, w, [&](std::int64_t s) {
      const WeightedGraph g = build_caching_graph(records, library_size, cache_size, l,
                                                  mix_seed(seed, s * 31 + 7));
      real_per_user[s] = greedy_match(g).total_weight / n;
      degree[s] = 2.0 * static_cast<double>(g.num_edges()) / n;
      // Empirical weight histogram over even symmetric differences.
      auto& counts = level_counts[s];
      counts.assign(library_size + 1, 0);
      for (const auto& e : g.edges()) counts[static_cast<int>(e.w)]++;
    });

    // Pool the weight histogram across samples and fit a model.
    std::vector<std::int64_t> pooled(library_size + 1, 0);
    for (const auto& counts : level_counts) {
      for (std::size_t i = 0; i < counts.size(); ++i) pooled[i] += counts[i];
    }
    std::vector<double> values, probs;
    std::int64_t total = 0;
    for (std::int64_t c : pooled) total += c;
    for (int v = 0; v <= library_size; ++v) {
      if (pooled[v] > 0) {
        values.push_back(v);
        probs.push_back(static_cast<double>(pooled[v]) / total);
      }
    }

    CaseStudyPoint pt;
    pt.range_l = l;
    const MetricStats real = summarize(real_per_user);
    const MetricStats deg = summarize(degree);
    pt.real_per_user = real.mean;
    pt.real_ci = real.ci95;
    pt.mean_degree = deg.mean;

    if (total > 0 && pt.mean_degree > 0) {
      // Normalize away float drift and match G(n, d/n) against the same d.
      double psum = 0.0;
      for (double p : probs) psum += p;
      for (double& p : probs) p /= psum;
      const WeightModel empirical(values, probs);
      std::vector<double> gnp_per_user(samples, 0.0);
      parallel_for_samples(samples, w, [&](std::int64_t s) {
        const WeightedGraph g = generate_gnp(n, std::min(1.0, pt.mean_degree / n), empirical,
                                             mix_seed(seed, s * 977 + 3));
        gnp_per_user[s] = greedy_match(g).total_weight / n;
      });
      const MetricStats gs = summarize(gnp_per_user);
      pt.gnp_per_user = gs.mean;
      pt.gnp_ci = gs.ci95;
      if (rep.weight_support.empty()) {
        rep.weight_support = values;
        rep.weight_probs = probs;
      }
    }
    rep.points.push_back(pt);
  }
  return rep;
}

std::string CaseStudyReport::to_json() const {
  nlohmann::json j;
  for (const auto& p : points) {
    j["points"].push_back({{"L", p.range_l},
                           {"mean_degree", p.mean_degree},
                           {"real_per_user", p.real_per_user},
                           {"real_ci95", p.real_ci},
                           {"gnp_per_user", p.gnp_per_user},
                           {"gnp_ci95", p.gnp_ci}});
  }
  j["weight_support"] = weight_support;
  j["weight_probs"] = weight_probs;
  return j.dump(2);
}

std::string CaseStudyReport::to_csv() const {
  std::ostringstream ss;
  ss << "L,mean_degree,real_per_user,real_ci95,gnp_per_user,gnp_ci95\n";
  ss.precision(12);
  for (const auto& p : points) {
    ss << p.range_l << "," << p.mean_degree << "," << p.real_per_user << "," << p.real_ci << ","
       << p.gnp_per_user << "," << p.gnp_ci << "\n";
  }
  return ss.str();
}

FailureSweepReport run_failure_sweep(int n, double radius_r, std::span<const double> l_grid,
                                     double delta1, double delta2, const WeightModel& model,
                                     int samples, std::uint64_t seed, int workers) {
  FailureSweepReport rep;
  const int w = resolve_workers(workers);
  for (const double l : l_grid) {
    std::vector<double> none(samples), t1(samples), t2(samples);
    parallel_for_samples(samples, w, [&](std::int64_t s) {
      const std::uint64_t gseed = mix_seed(seed, static_cast<std::uint64_t>(l * 1000) + s * 131);
      const WeightedGraph g = generate_geometric(n, radius_r, l, model, gseed);
      const MatchingOutcome base = greedy_match(g);
      none[s] = base.total_weight / n;
      FailureParams p1{delta1, 0.0, l};
      t1[s] = apply_failures(g, base, p1, gseed ^ 0x11).total_weight / n;
      FailureParams p2{0.0, delta2, l};
      t2[s] = apply_failures(g, base, p2, gseed ^ 0x22).total_weight / n;
    });
    FailureSweepPoint pt;
    pt.range_l = l;
    const auto s0 = summarize(none), s1 = summarize(t1), s2 = summarize(t2);
    pt.no_failure = s0.mean;
    pt.no_failure_ci = s0.ci95;
    pt.type1 = s1.mean;
    pt.type1_ci = s1.ci95;
    pt.type2 = s2.mean;
    pt.type2_ci = s2.ci95;
    rep.points.push_back(pt);
  }
  return rep;
}

std::string FailureSweepReport::to_json() const {
  nlohmann::json j;
  for (const auto& p : points) {
    j["points"].push_back({{"L", p.range_l},
                           {"no_failure", p.no_failure},
                           {"no_failure_ci95", p.no_failure_ci},
                           {"type1", p.type1},
                           {"type1_ci95", p.type1_ci},
                           {"type2", p.type2},
                           {"type2_ci95", p.type2_ci}});
  }
  return j.dump(2);
}

std::string FailureSweepReport::to_csv() const {
  std::ostringstream ss;
  ss << "L,no_failure,no_failure_ci95,type1,type1_ci95,type2,type2_ci95\n";
  ss.precision(12);
  for (const auto& p : points) {
    ss << p.range_l << "," << p.no_failure << "," << p.no_failure_ci << "," << p.type1 << ","
       << p.type1_ci << "," << p.type2 << "," << p.type2_ci << "\n";
  }
  return ss.str();
}

IntervalSweepReport run_interval_sweep(double lambda, std::span<const double> mu_set,
                                       std::span<const double> gamma_set,
                                       std::span<const int> t_grid, double radius_r,
                                       double range_l, int horizon_minutes,
                                       const WeightModel& model, std::uint64_t seed,
                                       int workers) {
  if (mu_set.empty() || gamma_set.empty() || t_grid.empty())
    throw std::invalid_argument("interval sweep: empty parameter grid");
  IntervalSweepReport rep;
  struct Task {
    double mu, gamma;
    int t;
  };
  std::vector<Task> tasks;
  for (double mu : mu_set) {
    for (double gamma : gamma_set) {
      for (int t : t_grid) tasks.push_back(Task{mu, gamma, t});
    }
  }
  std::vector<IntervalSweepPoint> points(tasks.size());
  const int w = resolve_workers(workers);
  parallel_for_samples(static_cast<std::int64_t>(tasks.size()), w, [&](std::int64_t i) {
    const Task& task = tasks[i];
    DynamicParams params;
    params.lambda = lambda;
    params.mu = task.mu;
    params.gamma = task.gamma;
    params.interval_minutes = task.t;
    params.range_l = range_l;
    params.radius_r = radius_r;
    params.horizon_minutes = horizon_minutes;
    params.seed = mix_seed(seed, i);
    const DynamicResult res = run_dynamic(params, model);
    IntervalSweepPoint pt;
    pt.mu = task.mu;
    pt.gamma = task.gamma;
    pt.t_interval = task.t;
    pt.time_avg_weight = res.time_avg_weight;
    pt.mean_participants = res.mean_participants;
    pt.steady_state_m = steady_state_participants(lambda, task.mu, task.gamma, task.t);
    points[i] = pt;
  });
  rep.points = std::move(points);
  return rep;
}

std::string IntervalSweepReport::to_json() const {
  nlohmann::json j;
  for (const auto& p : points) {
    j["points"].push_back({{"mu", p.mu},
                           {"gamma", p.gamma},
                           {"T", p.t_interval},
                           {"time_avg_weight", p.time_avg_weight},
                           {"mean_participants", p.mean_participants},
                           {"steady_state_m", p.steady_state_m}});
  }
  return j.dump(2);
}

std::string IntervalSweepReport::to_csv() const {
  std::ostringstream ss;
  ss << "mu,gamma,T,time_avg_weight,mean_participants,steady_state_m\n";
  ss.precision(12);
  for (const auto& p : points) {
    ss << p.mu << "," << p.gamma << "," << p.t_interval << "," << p.time_avg_weight << ","
       << p.mean_participants << "," << p.steady_state_m << "\n";
  }
  return ss.str();
}

}  // namespace d2d
