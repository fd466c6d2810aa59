// Command-line front end: graph generation, matching, exact oracles, bounds,
// analytic formulas, experiment sweeps and pre-baked figure reproductions.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "d2dmatch/analytics.hpp"
#include "d2dmatch/bounds.hpp"
#include "d2dmatch/dynamic.hpp"
#include "d2dmatch/exact.hpp"
#include "d2dmatch/experiments.hpp"
#include "d2dmatch/generators.hpp"
#include "d2dmatch/graph_io.hpp"
#include "d2dmatch/greedy.hpp"
#include "d2dmatch/rng.hpp"

using namespace d2d;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Every run announces the effective seed and a hash of the effective
// configuration so it can be reproduced byte-for-byte.
void announce(const std::string& command, std::uint64_t seed, const std::string& canonical) {
  std::printf("seed: %llu\nconfig-hash: %016llx\n", static_cast<unsigned long long>(seed),
              static_cast<unsigned long long>(fnv1a(command + "|" + canonical)));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
  std::printf("wrote %s\n", path.c_str());
}

WeightModel model_from_flags(std::vector<double> values, std::vector<double> probs) {
  if (values.empty()) values = {1.0, 2.0};
  if (probs.empty()) {
    probs.assign(values.size(), 1.0 / static_cast<double>(values.size()));
  }
  return WeightModel(std::move(values), std::move(probs));
}

TieRule tie_from_name(const std::string& name) {
  if (name == "id") return TieRule::HighId;
  if (name == "left") return TieRule::LowId;
  throw std::invalid_argument("tie rule must be 'id' or 'left'");
}

json outcome_json(const MatchingOutcome& m) {
  json j;
  auto edges = json::array();
  for (const auto& e : m.matched_edges) {
    if (m.multiunit) {
      edges.push_back({e.u, e.v, e.w, e.units});
    } else {
      edges.push_back({e.u, e.v, e.w});
    }
  }
  j["matched_edges"] = std::move(edges);
  j["total_weight"] = m.total_weight;
  j["rounds"] = m.rounds;
  return j;
}

std::string trace_csv(const MatchingOutcome& m) {
  std::ostringstream ss;
  ss << "round,proposals,matches\n";
  for (std::size_t r = 0; r < m.trace.size(); ++r)
    ss << (r + 1) << "," << m.trace[r].proposals << "," << m.trace[r].matches << "\n";
  return ss.str();
}

json optimal_json(const OptimalResult& r) {
  json j;
  j["method"] = method_name(r.method);
  j["total_weight"] = r.total_weight;
  if (r.matched_edges) {
    auto edges = json::array();
    for (auto [u, v] : *r.matched_edges) edges.push_back({u, v});
    j["matched_edges"] = std::move(edges);
  }
  return j;
}

// ------------------------------------------------------------- experiment file

ExperimentConfig pr_config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.generator.family = family_from_name(j.value("family", "line"));
  cfg.generator.n = j.value("n", 0);
  cfg.generator.side = j.value("side", 0);
  cfg.generator.p = j.value("p", 0.0);
  cfg.generator.d = j.value("d", 0.0);
  cfg.generator.radius = j.value("radius", 0.0);
  cfg.generator.range = j.value("range", 0.0);
  cfg.generator.library_size = j.value("library_size", 10);
  cfg.generator.cache_size = j.value("cache_size", 3);
  if (j.contains("quantities"))
    cfg.generator.quantity_set = j.at("quantities").get<std::vector<int>>();
  cfg.model = model_from_flags(j.value("values", std::vector<double>{}),
                               j.value("probs", std::vector<double>{}));
  cfg.samples = j.value("samples", 30);
  cfg.seed = j.value("seed", 0);
  cfg.baseline = baseline_from_name(j.value("baseline", "decomposition"));
  cfg.tie = tie_from_name(j.value("tie", "id"));
  cfg.multiunit = j.value("multiunit", false);
  cfg.workers = j.value("workers", 0);
  return cfg;
}

int run_experiment_file(const std::string& config_path, const std::string& out_path,
                        const std::string& csv_path) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open: " + config_path);
  json j;
  in >> j;
  const std::string kind = j.value("kind", "pr");
  const std::uint64_t seed = j.value("seed", 0);
  announce("experiment:" + kind, seed, j.dump());

  if (kind == "pr") {
    const auto cfg = pr_config_from_json(j);
    const auto rep = estimate_pr(cfg);
    std::printf("pr_ratio_of_means: %.6f +- %.6f\n", rep.pr_ratio_of_means, rep.pr_ratio_ci);
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    return 0;
  }
  if (kind == "rounds") {
    RoundsConfig cfg;
    cfg.family = family_from_name(j.value("family", "line"));
    cfg.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
    cfg.gnp_d = j.value("gnp_d", 0.5);
    cfg.model = model_from_flags(j.value("values", std::vector<double>{}),
                                 j.value("probs", std::vector<double>{}));
    cfg.seeds_per_size = j.value("seeds_per_size", 30);
    cfg.seed = seed;
    cfg.tie = tie_from_name(j.value("tie", "id"));
    cfg.workers = j.value("workers", 0);
    const auto rep = measure_rounds(cfg);
    std::printf("log fit: c=%.3f intercept=%.3f R2=%.4f\n", rep.log_fit_c,
                rep.log_fit_intercept, rep.log_fit_r2);
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    if (!csv_path.empty()) write_text(csv_path, rep.to_csv());
    return 0;
  }
  if (kind == "caching") {
    std::vector<LocationRecord> recs;
    if (j.contains("location_file")) {
      recs = read_locations_csv(j.at("location_file").get<std::string>());
    } else {
      recs = synthetic_locations(j.value("n", 450), j.value("radius", 50.0),
                                 j.value("floors", 3), seed);
    }
    const auto l_grid = j.at("l_grid").get<std::vector<double>>();
    const auto rep = run_caching_case_study(recs, l_grid, j.value("library_size", 10),
                                            j.value("cache_size", 3), j.value("samples", 10),
                                            seed, j.value("workers", 0));
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    if (!csv_path.empty()) write_text(csv_path, rep.to_csv());
    return 0;
  }
  if (kind == "failure_sweep") {
    const auto l_grid = j.at("l_grid").get<std::vector<double>>();
    const auto rep = run_failure_sweep(
        j.value("n", 10000), j.value("radius", 1000.0), l_grid, j.value("delta1", 0.02),
        j.value("delta2", 0.1),
        model_from_flags(j.value("values", std::vector<double>{}),
                         j.value("probs", std::vector<double>{})),
        j.value("samples", 3), seed, j.value("workers", 0));
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    if (!csv_path.empty()) write_text(csv_path, rep.to_csv());
    return 0;
  }
  if (kind == "interval_sweep") {
    const auto mu_set = j.at("mu_set").get<std::vector<double>>();
    const auto gamma_set = j.at("gamma_set").get<std::vector<double>>();
    const auto t_grid = j.at("t_grid").get<std::vector<int>>();
    const auto rep = run_interval_sweep(
        j.value("lambda", 20.0), mu_set, gamma_set, t_grid, j.value("radius", 1000.0),
        j.value("range", 100.0), j.value("horizon", 3000),
        model_from_flags(j.value("values", std::vector<double>{}),
                         j.value("probs", std::vector<double>{})),
        seed, j.value("workers", 0));
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    if (!csv_path.empty()) write_text(csv_path, rep.to_csv());
    return 0;
  }
  throw std::invalid_argument("unknown experiment kind: " + kind);
}

// ---------------------------------------------------------------- reproduce

std::string curve_csv_header() { return "parameter,analytic_value,simulated_value,ci_halfwidth\n"; }

int reproduce_figure(const std::string& fig, const std::string& outdir, std::uint64_t seed,
                     const std::string& location_file, int workers) {
  const WeightModel k2 = WeightModel::uniform({1.0, 2.0});
  announce("reproduce:" + fig, seed, fig + "|" + location_file);

  if (fig == "fig7") {
    // Caching case study: matched weight per user vs mean neighbor count,
    // real-location graph against its G(n, d/n) twin.
    std::vector<LocationRecord> recs =
        location_file.empty() ? synthetic_locations(450, 50.0, 3, seed)
                              : read_locations_csv(location_file);
    const std::vector<double> l_grid{2, 4, 6, 8, 10, 14, 18, 24, 30};
    const auto rep = run_caching_case_study(recs, l_grid, 10, 3, 8, seed, workers);
    write_text(outdir + "/fig7.csv", rep.to_csv());
    write_text(outdir + "/fig7.json", rep.to_json());
    return 0;
  }
  if (fig == "fig8") {
    // Ratio curve over the mean degree: analytic tree value below d = 1,
    // simulation everywhere, both against the degree-mixed bound.
    const int n = 10000;
    std::ostringstream csv;
    csv << curve_csv_header();
    csv.precision(10);
    for (double d : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 7.0, 10.0}) {
      const double bound = neighbor_max_bound_expected_poisson(n, d, k2) / n;
      std::string analytic = "";
      if (d < 1.0) {
        const double a = expected_root_weight(d, k2, RootWeightMode::Analytic).value;
        analytic = std::to_string(a / bound);
      }
      const int seeds = 24;
      std::vector<double> per_node(seeds);
      parallel_for_samples(seeds, resolve_workers(workers), [&](std::int64_t s) {
        const auto g = generate_gnp(n, d / n, k2, mix_seed(seed, d * 1000 + s));
        per_node[s] = greedy_match(g).total_weight / n;
      });
      const auto st = summarize(per_node);
      csv << d << "," << analytic << "," << st.mean / bound << "," << st.ci95 / bound << "\n";
    }
    write_text(outdir + "/fig8.csv", csv.str());
    return 0;
  }
  if (fig == "fig9") {
    const std::vector<double> l_grid{25, 50, 75, 100, 150, 200, 250, 300};
    const auto rep = run_failure_sweep(10000, 1000.0, l_grid, 0.02, 0.1, k2, 3, seed, workers);
    write_text(outdir + "/fig9.csv", rep.to_csv());
    return 0;
  }
  if (fig == "fig10") {
    const std::vector<double> mu_set{0.1, 0.3};
    const std::vector<double> gamma_set{0.0, 0.5};
    const std::vector<int> t_grid{1, 2, 3, 5, 8, 12, 20, 40};
    const auto rep = run_interval_sweep(20.0, mu_set, gamma_set, t_grid, 1000.0, 100.0, 3200,
                                        k2, seed, workers);
    write_text(outdir + "/fig10.csv", rep.to_csv());
    return 0;
  }
  if (fig == "fig11") {
    // Multi-unit ratio against the allocation bound, swept over the weight gap.
    std::ostringstream csv;
    csv << curve_csv_header();
    csv.precision(10);
    for (double delta : {0.01, 0.1, 0.3, 1.0, 3.0, 10.0}) {
      ExperimentConfig cfg;
      cfg.generator.family = Family::Line;
      cfg.generator.n = 50000;
      cfg.generator.quantity_set = {1, 2};
      cfg.model = WeightModel::uniform({1.0, 1.0 + delta});
      cfg.samples = 10;
      cfg.seed = mix_seed(seed, static_cast<std::uint64_t>(delta * 100));
      cfg.baseline = Baseline::MultiunitBound;
      cfg.tie = TieRule::LowId;
      cfg.multiunit = true;
      cfg.workers = workers;
      const auto rep = estimate_pr(cfg);
      csv << delta << "," << pr_lower_bound_multiunit(delta) << "," << rep.pr_ratio_of_means
          << "," << rep.pr_ratio_ci << "\n";
    }
    write_text(outdir + "/fig11.csv", csv.str());
    return 0;
  }
  throw std::invalid_argument("unknown figure (use fig7..fig11): " + fig);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy D2D matching toolkit"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "worker threads (default: D2DMATCH_WORKERS or 1)");

  // ---- generate
  auto* gen = app.add_subcommand("generate", "write a random graph to a file");
  std::string gen_family = "line", gen_out = "graph.json", gen_csv;
  int gen_n = 0, gen_side = 0, gen_library = 10, gen_cache = 3, gen_floors = 1;
  double gen_p = 0, gen_d = 0, gen_radius = 0, gen_range = 0;
  std::vector<double> gen_values, gen_probs;
  std::vector<int> gen_quants;
  std::uint64_t gen_seed = 0;
  gen->add_option("--family", gen_family, "line|grid2d|gnp|geometric|caching")->required();
  gen->add_option("--n", gen_n);
  gen->add_option("--side", gen_side);
  gen->add_option("--p", gen_p);
  gen->add_option("--d", gen_d, "gnp mean degree (p = d/n)");
  gen->add_option("--radius", gen_radius);
  gen->add_option("--range", gen_range);
  gen->add_option("--library-size", gen_library);
  gen->add_option("--cache-size", gen_cache);
  gen->add_option("--floors", gen_floors);
  gen->add_option("--values", gen_values)->expected(-1);
  gen->add_option("--probs", gen_probs)->expected(-1);
  gen->add_option("--quantities", gen_quants)->expected(-1);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out);
  gen->add_option("--csv", gen_csv, "also write a CSV edge list");

  // ---- match
  auto* match = app.add_subcommand("match", "run the greedy engine on a graph file");
  std::string match_graph, match_out = "outcome.json", match_trace, match_tie = "id";
  bool match_multiunit = false;
  std::vector<double> match_failures;
  double match_iradius = 0.0;
  std::uint64_t match_seed = 0;
  match->add_option("--graph", match_graph)->required();
  match->add_option("--out", match_out);
  match->add_option("--trace", match_trace, "per-round CSV trace");
  match->add_option("--tie-rule", match_tie, "id|left");
  match->add_flag("--multiunit", match_multiunit);
  match->add_option("--failures", match_failures, "delta1 delta2")->expected(2);
  match->add_option("--interference-radius", match_iradius);
  match->add_option("--seed", match_seed);

  // ---- optimal
  auto* opt = app.add_subcommand("optimal", "exact optimum on a graph file");
  std::string opt_graph, opt_method = "exhaustive", opt_out = "optimal.json";
  int opt_max_edges = 22;
  opt->add_option("--graph", opt_graph)->required();
  opt->add_option("--method", opt_method, "path_dp|tree_dp|exhaustive|multiunit_exhaustive");
  opt->add_option("--max-edges", opt_max_edges);
  opt->add_option("--out", opt_out);

  // ---- bound
  auto* bnd = app.add_subcommand("bound", "upper bounds on the optimum");
  std::string bnd_graph, bnd_method = "neighbor-max", bnd_out;
  int bnd_n = 0;
  double bnd_d = 0;
  std::vector<double> bnd_values, bnd_probs;
  bnd->add_option("--method", bnd_method,
                  "decomposition|decomposition-expected|neighbor-max|neighbor-max-expected|"
                  "neighbor-max-poisson|multiunit");
  bnd->add_option("--graph", bnd_graph);
  bnd->add_option("--n", bnd_n);
  bnd->add_option("--d", bnd_d);
  bnd->add_option("--values", bnd_values)->expected(-1);
  bnd->add_option("--probs", bnd_probs)->expected(-1);
  bnd->add_option("--out", bnd_out);

  // ---- analyze
  auto* ana = app.add_subcommand("analyze", "closed-form and fixed-point analytics");
  std::string ana_what, ana_out;
  int ana_k = 0, ana_t = 1;
  double ana_d = 0, ana_delta = 0, ana_lambda = 0, ana_mu = 0, ana_gamma = 0;
  double ana_tolerance = 1e-10;
  std::int64_t ana_samples = 200000;
  std::string ana_mode = "analytic";
  std::vector<double> ana_values, ana_probs;
  ana->add_option("what", ana_what,
                  "pr-linear|slope-linear|pr-grid|slope-grid|pr-multiunit|tree-fixed-point|"
                  "root-weight|steady-state|grid-proposals")
      ->required();
  ana->add_option("--K", ana_k);
  ana->add_option("--v", ana_values)->expected(-1);
  ana->add_option("--p", ana_probs)->expected(-1);
  ana->add_option("--d", ana_d);
  ana->add_option("--delta", ana_delta);
  ana->add_option("--mode", ana_mode, "analytic|mc");
  ana->add_option("--samples", ana_samples);
  ana->add_option("--tolerance", ana_tolerance);
  ana->add_option("--lambda", ana_lambda);
  ana->add_option("--mu", ana_mu);
  ana->add_option("--gamma", ana_gamma);
  ana->add_option("--T", ana_t);
  ana->add_option("--out", ana_out);
  std::uint64_t ana_seed = 0;
  ana->add_option("--seed", ana_seed);

  // ---- experiment
  auto* exp = app.add_subcommand("experiment", "run a declarative experiment config");
  std::string exp_config, exp_out, exp_csv;
  exp->add_option("--config", exp_config)->required();
  exp->add_option("--out", exp_out);
  exp->add_option("--csv", exp_csv);

  // ---- reproduce
  auto* repro = app.add_subcommand("reproduce", "pre-baked figure configurations");
  std::string repro_fig, repro_outdir = ".", repro_location;
  std::uint64_t repro_seed = 0;
  repro->add_option("figure", repro_fig, "fig7|fig8|fig9|fig10|fig11")->required();
  repro->add_option("--outdir", repro_outdir);
  repro->add_option("--seed", repro_seed);
  repro->add_option("--location-file", repro_location, "real location CSV for fig7");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      GeneratorSpec spec;
      spec.family = family_from_name(gen_family);
      spec.n = gen_n;
      spec.side = gen_side;
      spec.p = gen_p;
      spec.d = gen_d;
      spec.radius = gen_radius;
      spec.range = gen_range;
      spec.library_size = gen_library;
      spec.cache_size = gen_cache;
      spec.quantity_set = gen_quants;
      const auto model = model_from_flags(gen_values, gen_probs);
      announce("generate", gen_seed, gen_family + "|" + std::to_string(gen_n) + "|" +
                                         std::to_string(gen_side) + "|" + gen_out);
      const auto g = spec.build(model, gen_seed);
      write_graph_json(g, gen_out);
      if (!gen_csv.empty()) write_graph_csv(g, gen_csv);
      std::printf("nodes: %d edges: %lld\n", g.num_nodes(),
                  static_cast<long long>(g.num_edges()));
      return 0;
    }
    if (*match) {
      announce("match", match_seed, match_graph + "|" + match_tie + "|" +
                                        (match_multiunit ? "multi" : "single"));
      const auto g = read_graph_json(match_graph);
      const TieRule tie = tie_from_name(match_tie);
      MatchingOutcome m;
      if (!match_failures.empty()) {
        FailureParams params;
        params.delta1 = match_failures[0];
        params.delta2 = match_failures[1];
        params.interference_radius = match_iradius > 0 ? match_iradius : 0.0;
        m = greedy_with_failures(g, params, match_seed, tie);
      } else if (match_multiunit) {
        m = greedy_match_multiunit(g, tie, resolve_workers(workers));
      } else {
        m = greedy_match(g, tie, resolve_workers(workers));
      }
      write_text(match_out, outcome_json(m).dump(2) + "\n");
      if (!match_trace.empty()) write_text(match_trace, trace_csv(m));
      std::printf("total_weight: %.10g rounds: %d matched: %zu\n", m.total_weight, m.rounds,
                  m.matched_edges.size());
      return 0;
    }
    if (*opt) {
      announce("optimal", 0, opt_graph + "|" + opt_method);
      const auto g = read_graph_json(opt_graph);
      OptimalResult r;
      if (opt_method == "path_dp") {
        r = optimal_path_dp(g);
      } else if (opt_method == "tree_dp") {
        r = optimal_tree_dp(g);
      } else if (opt_method == "exhaustive") {
        r = optimal_exhaustive(g, opt_max_edges);
      } else if (opt_method == "multiunit_exhaustive") {
        r = optimal_multiunit_exhaustive(g);
      } else {
        throw std::invalid_argument("unknown optimal method: " + opt_method);
      }
      write_text(opt_out, optimal_json(r).dump(2) + "\n");
      std::printf("total_weight: %.10g\n", r.total_weight);
      return 0;
    }
    if (*bnd) {
      announce("bound", 0, bnd_method + "|" + bnd_graph);
      const auto model = model_from_flags(bnd_values, bnd_probs);
      double value = 0.0;
      if (bnd_method == "decomposition-expected") {
        if (bnd_n <= 0) throw std::invalid_argument("decomposition-expected needs --n");
        value = decomposition_bound_expected(bnd_n, model);
      } else if (bnd_method == "neighbor-max-poisson") {
        if (bnd_n <= 0) throw std::invalid_argument("neighbor-max-poisson needs --n and --d");
        value = neighbor_max_bound_expected_poisson(bnd_n, bnd_d, model);
      } else {
        if (bnd_graph.empty()) throw std::invalid_argument("this bound needs --graph");
        const auto g = read_graph_json(bnd_graph);
        if (bnd_method == "decomposition") {
          value = decomposition_bound_instance(g, model);
        } else if (bnd_method == "neighbor-max") {
          value = neighbor_max_bound_instance(g);
        } else if (bnd_method == "neighbor-max-expected") {
          value = neighbor_max_bound_expected(g, model);
        } else if (bnd_method == "multiunit") {
          value = multiunit_bound(g);
        } else {
          throw std::invalid_argument("unknown bound method: " + bnd_method);
        }
      }
      std::printf("bound: %.12g\n", value);
      if (!bnd_out.empty())
        write_text(bnd_out, json{{"method", bnd_method}, {"bound", value}}.dump(2) + "\n");
      return 0;
    }
    if (*ana) {
      const auto model = model_from_flags(ana_values, ana_probs);
      if (ana_k > 0 && ana_k != model.size())
        throw std::invalid_argument("--K disagrees with the length of --v/--p");
      announce("analyze:" + ana_what, ana_seed, ana_what);
      json out;
      if (ana_what == "pr-linear") {
        const double v = pr_lower_bound_linear(model);
        std::printf("pr_lower_bound_linear: %.6f\n", v);
        out = {{"pr_lower_bound_linear", v}};
      } else if (ana_what == "slope-linear") {
        const auto rec = linear_recurrence(model);
        std::printf("slope: %.8f constant: %.8f\n", rec.slope, rec.constant);
        json lags = json::array();
        for (auto [lag, c] : rec.lags) lags.push_back({lag, c});
        out = {{"slope", rec.slope}, {"constant", rec.constant}, {"lags", lags}};
      } else if (ana_what == "pr-grid") {
        const double v = pr_lower_bound_grid(ana_delta);
        std::printf("pr_lower_bound_grid: %.6f\n", v);
        out = {{"pr_lower_bound_grid", v}, {"delta", ana_delta}};
      } else if (ana_what == "slope-grid") {
        const auto rec = grid_recurrence(WeightModel::uniform({1.0, 1.0 + ana_delta}));
        std::printf("slope: %.8f\n", rec.slope);
        out = {{"slope", rec.slope}, {"constant", rec.constant}};
      } else if (ana_what == "pr-multiunit") {
        const double v = pr_lower_bound_multiunit(ana_delta);
        std::printf("pr_lower_bound_multiunit: %.6f\n", v);
        out = {{"pr_lower_bound_multiunit", v}, {"delta", ana_delta}};
      } else if (ana_what == "tree-fixed-point") {
        const auto sol = solve_tree_fixed_point(ana_d, model, ana_tolerance);
        std::printf("y:");
        for (double y : sol.y) std::printf(" %.10f", y);
        std::printf("\n");
        out = {{"d", ana_d}, {"y", sol.y}, {"residuals", sol.residuals}};
      } else if (ana_what == "root-weight") {
        const auto mode =
            ana_mode == "mc" ? RootWeightMode::MonteCarlo : RootWeightMode::Analytic;
        const auto r = expected_root_weight(ana_d, model, mode, ana_samples, ana_seed);
        std::printf("expected_root_weight: %.8f%s\n", r.value,
                    r.approximate ? " (approximate)" : "");
        out = {{"value", r.value}, {"std_error", r.std_error}, {"approximate", r.approximate}};
      } else if (ana_what == "steady-state") {
        const double m = steady_state_participants(ana_lambda, ana_mu, ana_gamma, ana_t);
        std::printf("steady_state_participants: %.6f\n", m);
        out = {{"M", m}};
      } else if (ana_what == "grid-proposals") {
        const auto y = grid_proposal_probabilities();
        std::printf("right: y1=%.6f y2=%.6f left: y1=%.6f y2=%.6f (printed recursion)\n",
                    y.y1_right, y.y2_right, y.y1_left, y.y2_left);
        out = {{"y1_right", y.y1_right},
               {"y2_right", y.y2_right},
               {"y1_left", y.y1_left},
               {"y2_left", y.y2_left}};
      } else {
        throw std::invalid_argument("unknown analysis: " + ana_what);
      }
      if (!ana_out.empty()) write_text(ana_out, out.dump(2) + "\n");
      return 0;
    }
    if (*exp) {
      return run_experiment_file(exp_config, exp_out, exp_csv);
    }
    if (*repro) {
      return reproduce_figure(repro_fig, repro_outdir, repro_seed, repro_location,
                              workers);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
