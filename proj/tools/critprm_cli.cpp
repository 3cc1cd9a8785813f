// Command-line front end: plan, campaign, components, stretch, lattice, constants.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critprm/constants.hpp"
#include "critprm/experiments.hpp"
#include "critprm/lattice.hpp"
#include "critprm/planners.hpp"
#include "critprm/rgg.hpp"
#include "critprm/sampling.hpp"
#include "critprm/scenario.hpp"

namespace {

using namespace critprm;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitScenario = 3;

json nullable(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

struct PlanOptions {
  std::string scenario;
  std::string planner = "prm";
  double n = 0.0;
  std::string radius_preset;
  double gamma = 0.0;
  double radius = 0.0;
  std::string rst_preset = "prm-star";
  std::uint64_t seed = 1;
  std::string cost_map = "coord:1:0.5";
  bool simplify = false;
  double eta = 0.2;
  double mu = 0.1;
  double goal_side = 0.1;
  std::string out;
  std::string path_csv;
};

double plan_radius(const PlanOptions& o, const Scenario& scn) {
  const auto d = scn.dim();
  const int given = (o.radius > 0.0) + (o.gamma > 0.0) + !o.radius_preset.empty();
  if (given > 1) throw ConfigError("give only one of --radius, --gamma, --radius-preset");
  if (o.radius > 0.0) return o.radius;
  if (o.gamma > 0.0) return gamma_radius(d, o.n, o.gamma);
  const std::string preset = o.radius_preset.empty() ? "fmt-star" : o.radius_preset;
  if (preset == "fmt-star") return r_fmt_star(d, o.n, scn.free_volume());
  if (preset == "prm-star") return r_prm_star(d, o.n);
  if (preset == "critical") return critical_radius(static_cast<int>(d), o.n);
  return radius_schedule(o.n, d, 10, 1.0, true, scn.free_volume()).at(preset).radius;
}

int run_plan(const PlanOptions& o) {
  const auto scn = load_scenario(o.scenario);
  if (!(o.n > 1.0)) throw ConfigError("--n must exceed 1");
  CampaignConfig probe;
  probe.planner = o.planner;
  probe.n_list = {o.n};
  probe.rst_preset = o.rst_preset;
  probe.eta = o.eta;
  probe.mu = o.mu;
  probe.goal_side = o.goal_side;
  probe.validate();

  const auto start = std::chrono::steady_clock::now();
  const auto d = scn.dim();
  double radius = std::nan("");
  double r_st = std::nan("");
  PlanResult result;
  const auto goal = goal_region(scn, o.goal_side);
  const auto iterations = static_cast<std::size_t>(std::llround(o.n));
  if (o.planner == "prm" || o.planner == "fmt" || o.planner == "btt") {
    radius = plan_radius(o, scn);
    if (o.rst_preset == "prm-star") r_st = r_prm_star(d, o.n);
    else if (o.rst_preset == "fmt-star") r_st = r_fmt_star(d, o.n, scn.free_volume());
    else if (o.rst_preset == "rn") r_st = radius;
    else r_st = std::stod(o.rst_preset);
    if (o.planner == "prm") {
      result = plan_prm(scn, o.n, radius, r_st, o.seed);
    } else if (o.planner == "fmt") {
      result = fmt_star(scn, o.n, radius, r_st, o.seed);
    } else {
      CostMap m = CostMap::constant(0.0);
      try {
        m = CostMap::parse(o.cost_map, scn);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      result = btt(scn, o.n, radius, r_st, m, o.seed);
    }
  } else if (o.planner == "rrt") {
    radius = o.eta;
    result = rrt_query(scn, rrt_build(scn, scn.start(), goal, iterations, o.eta, o.seed), goal);
  } else {
    radius = default_rrg_base_radius(d)(iterations);
    r_st = default_rrg_st_radius(d)(iterations);
    result = rrg_query(scn, rrg_build(scn, scn.start(), goal, iterations, o.eta, o.mu, default_rrg_base_radius(d),
                                      default_rrg_st_radius(d), o.seed));
  }

  if (o.planner == "rrt" || o.planner == "rrg")
    result.stats.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  double simplified = std::nan("");
  std::optional<Path> simplified_path;
  if (result.success() && o.simplify) {
    simplified_path = simplify_path(scn, *result.path, o.seed);
    simplified = path_length(*simplified_path);
  }
  json j = {{"scenario", scn.name()},
            {"planner", o.planner},
            {"d", d},
            {"n", o.n},
            {"radius", nullable(radius)},
            {"r_st", nullable(r_st)},
            {"seed", o.seed},
            {"success", result.success()},
            {"cost", result.success() ? json(result.cost) : json(nullptr)},
            {"simplified_cost", nullable(simplified)},
            {"bottleneck_cost", result.bottleneck_cost ? json(*result.bottleneck_cost) : json(nullptr)},
            {"waypoints", result.success() ? result.path->size() : 0},
            {"stats",
             {{"vertex_count", result.stats.vertex_count},
              {"edge_count", result.stats.edge_count},
              {"samples_drawn", result.stats.samples_drawn},
              {"wall_time_ms", result.stats.wall_time_ms}}}};
  if (!o.path_csv.empty()) {
    auto out = open_output(o.path_csv);
    PointSet pts(d);
    if (result.success()) {
      for (const auto& p : (simplified_path ? *simplified_path : *result.path).waypoints()) pts.push_back(p);
    }
    write_points_csv(out, pts);
  }
  write_json(j, o.out);
  return kExitOk;
}

struct CampaignOptions {
  std::string config;
  std::string out;
  std::string scenario, planner, rst_preset, cost_map;
  std::vector<double> n_list, gammas;
  std::vector<std::string> labels;
  std::size_t trials = 0, threads = 0;
  int k = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  bool simplify = false, include_prm_star = false;
};

int run_campaign_cmd(const CampaignOptions& o, const CLI::App& sub) {
  CampaignConfig cfg;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot open config '" + o.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    cfg = campaign_config_from_json(j);
  }
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--scenario")) cfg.scenario = o.scenario;
  if (given("--planner")) cfg.planner = o.planner;
  if (given("--n")) cfg.n_list = o.n_list;
  if (given("--trials")) cfg.trials = o.trials;
  if (given("--k")) cfg.k = o.k;
  if (given("--gamma")) cfg.gamma = o.gamma;
  if (given("--gammas")) cfg.gammas = o.gammas;
  if (given("--radius-labels")) cfg.radius_labels = o.labels;
  if (given("--rst-preset")) cfg.rst_preset = o.rst_preset;
  if (given("--seed")) cfg.seed = o.seed;
  if (given("--cost-map")) cfg.cost_map = o.cost_map;
  if (given("--simplify")) cfg.simplify = o.simplify;
  if (given("--include-prm-star")) cfg.include_prm_star = o.include_prm_star;
  if (given("--threads")) cfg.threads = o.threads;
  const auto report = run_campaign_to_dir(cfg, o.out);
  std::size_t successes = 0;
  for (const auto& r : report.records) successes += r.success;
  std::cerr << "campaign: " << report.records.size() << " records, " << successes << " successful, written to "
            << o.out << '\n';
  return kExitOk;
}

struct ComponentOptions {
  std::vector<std::size_t> d_list = {2};
  std::vector<double> n_list = {1000};
  std::vector<std::string> labels = {"r0", "r2", "r10"};
  std::size_t trials = 50, threads = 0;
  std::uint64_t seed = 1;
  int k = 10;
  double gamma = 1.0;
  std::string out, trials_out;
};

int run_components(const ComponentOptions& o) {
  const auto table = component_table(o.d_list, o.n_list, o.labels, o.trials, o.seed, o.k, o.gamma, o.threads);
  if (o.out.empty() || o.out == "-") {
    write_component_table_csv(std::cout, table);
  } else {
    auto out = open_output(o.out);
    write_component_table_csv(out, table);
  }
  if (!o.trials_out.empty()) {
    auto out = open_output(o.trials_out);
    write_component_trials_csv(out, table);
  }
  return kExitOk;
}

struct StretchOptions {
  std::size_t d = 2;
  double n = 10000;
  double radius = 0.0;
  double critical_multiple = 1.5;
  std::size_t pairs = kDefaultStretchPairs;
  double separation = kDefaultStretchSeparation;
  std::uint64_t seed = 1;
  std::string out, edges_out;
};

int run_stretch(const StretchOptions& o) {
  if (!(o.n > 0.0)) throw ConfigError("--n must be positive");
  const double radius = o.radius > 0.0 ? o.radius : o.critical_multiple * critical_radius(static_cast<int>(o.d), o.n);
  if (!(o.separation > radius)) throw ConfigError("--separation must exceed the radius");
  const auto sample = sample_ppp(o.n, Box::unit(o.d), o.seed);
  const auto g = build_rgg(sample.points, radius);
  Rng rng(derive_seed(o.seed, 1));
  const auto report = estimate_stretch(g, o.pairs, o.separation, rng);
  const auto comps = connected_components(g);
  json j = {{"d", o.d},
            {"n", o.n},
            {"radius", radius},
            {"seed", o.seed},
            {"vertex_count", g.vertex_count()},
            {"edge_count", g.edge_count()},
            {"largest_fraction", g.vertex_count() ? double(comps.largest_size()) / double(g.vertex_count()) : 0.0},
            {"pairs", report.pairs.size()},
            {"max_ratio", report.max_ratio},
            {"p95_ratio", report.p95_ratio}};
  if (!o.edges_out.empty()) {
    auto out = open_output(o.edges_out);
    write_edge_list_csv(out, g);
  }
  write_json(j, o.out);
  return kExitOk;
}

struct LatticeOptions {
  std::size_t d = 2;
  double n = 10000;
  double p = 0.5;
  std::size_t trials = 50;
  std::size_t decay_trials = 100000;
  std::vector<int> k_list = {0, 5, 10, 15, 20};
  std::uint64_t seed = 1;
  std::string out = "lattice_out";
};

int run_lattice(const LatticeOptions& o) {
  if (!(o.p >= 0.0 && o.p <= 1.0)) throw ConfigError("--p must lie in [0,1]");
  if (o.trials < 1) throw ConfigError("--trials must be at least 1");
  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "lattice_components.csv");
    out << kComponentCsvHeader << '\n';
    std::ostringstream label;
    label << "p" << o.p;
    double mean_largest = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto g = build_lattice_graph(o.n, o.d, o.p, derive_seed(o.seed, t));
      write_component_rows(out, o.n, static_cast<int>(o.d), label.str(), t, connected_components(g.graph),
                           g.retained.size());
      mean_largest += lattice_cluster_fractions(g).largest;
    }
    std::cerr << "lattice: mean largest-cluster fraction " << mean_largest / static_cast<double>(o.trials) << '\n';
  }
  auto out = open_output(dir / "decay.csv");
  out << "d,p,k,hits,trials,frequency\n";
  bool subcritical = true;
  try {
    subcritical = o.p < p_star(static_cast<int>(o.d));
  } catch (const NoTabulatedConstant&) {
  }
  if (!subcritical) {
    std::cerr << "lattice: p >= p*(d), A_k decay skipped\n";
    return kExitOk;
  }
  const auto decay = subcritical_reach_decay(o.d, o.p, o.k_list, o.decay_trials, o.seed);
  out.precision(17);
  for (const auto& pt : decay.points)
    out << o.d << ',' << o.p << ',' << pt.k << ',' << pt.hits << ',' << decay.trials << ',' << pt.frequency << '\n';
  std::cerr << "lattice: decay slope " << decay.slope << ", R^2 " << decay.r_squared << '\n';
  return kExitOk;
}

int run_constants(const std::vector<int>& dims, const std::string& out) {
  json arr = json::array();
  for (const int d : dims) arr.push_back(constants_to_json(constants(d)));
  write_json(dims.size() == 1 ? arr[0] : arr, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical-radius motion planning toolkit"};
  app.require_subcommand(1);

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "run one planner on one scenario");
  plan_cmd->add_option("--scenario", plan.scenario, "builtin name or JSON file")->required();
  plan_cmd->add_option("--planner", plan.planner)->check(CLI::IsMember({"prm", "fmt", "btt", "rrg", "rrt"}));
  plan_cmd->add_option("--n", plan.n, "expected samples (iterations for rrt/rrg)")->required();
  plan_cmd->add_option("--radius-preset", plan.radius_preset, "fmt-star, prm-star, critical or r0..r10, rPRM*");
  plan_cmd->add_option("--gamma", plan.gamma, "r_n = gamma * n^(-1/d)");
  plan_cmd->add_option("--radius", plan.radius, "explicit r_n");
  plan_cmd->add_option("--rst-preset", plan.rst_preset, "prm-star, fmt-star, rn or a number");
  plan_cmd->add_option("--seed", plan.seed);
  plan_cmd->add_option("--cost-map", plan.cost_map, "coord:AXIS:VALUE, point:x0,x1,..., clearance, constant:C");
  plan_cmd->add_flag("--simplify", plan.simplify);
  plan_cmd->add_option("--eta", plan.eta);
  plan_cmd->add_option("--mu", plan.mu);
  plan_cmd->add_option("--goal-side", plan.goal_side);
  plan_cmd->add_option("--out", plan.out, "JSON result file (default stdout)");
  plan_cmd->add_option("--path-csv", plan.path_csv, "write the path waypoints as CSV");

  CampaignOptions camp;
  auto* camp_cmd = app.add_subcommand("campaign", "multi-trial sweep writing records/aggregates/manifest");
  camp_cmd->add_option("--config", camp.config, "JSON config file; flags override it");
  camp_cmd->add_option("--out", camp.out, "output directory")->required();
  camp_cmd->add_option("--scenario", camp.scenario);
  camp_cmd->add_option("--planner", camp.planner);
  camp_cmd->add_option("--n", camp.n_list);
  camp_cmd->add_option("--trials", camp.trials);
  camp_cmd->add_option("--k", camp.k);
  camp_cmd->add_option("--gamma", camp.gamma);
  camp_cmd->add_option("--gammas", camp.gammas, "replace the schedule by gamma * n^(-1/d) radii");
  camp_cmd->add_option("--radius-labels", camp.labels);
  camp_cmd->add_option("--rst-preset", camp.rst_preset);
  camp_cmd->add_option("--seed", camp.seed);
  camp_cmd->add_option("--cost-map", camp.cost_map);
  camp_cmd->add_flag("--simplify", camp.simplify);
  camp_cmd->add_flag("--include-prm-star", camp.include_prm_star);
  camp_cmd->add_option("--threads", camp.threads);

  ComponentOptions comp;
  auto* comp_cmd = app.add_subcommand("components", "largest-component fractions of PPP radius graphs");
  comp_cmd->add_option("--d", comp.d_list);
  comp_cmd->add_option("--n", comp.n_list);
  comp_cmd->add_option("--radius-labels", comp.labels);
  comp_cmd->add_option("--trials", comp.trials);
  comp_cmd->add_option("--seed", comp.seed);
  comp_cmd->add_option("--k", comp.k);
  comp_cmd->add_option("--gamma", comp.gamma);
  comp_cmd->add_option("--threads", comp.threads);
  comp_cmd->add_option("--out", comp.out, "table CSV (default stdout)");
  comp_cmd->add_option("--trials-out", comp.trials_out, "per-trial component CSV");

  StretchOptions str;
  auto* str_cmd = app.add_subcommand("stretch", "empirical stretch of a PPP radius graph");
  str_cmd->add_option("--d", str.d);
  str_cmd->add_option("--n", str.n);
  str_cmd->add_option("--radius", str.radius, "explicit radius");
  str_cmd->add_option("--critical-multiple", str.critical_multiple, "radius as a multiple of gamma* n^(-1/d)");
  str_cmd->add_option("--pairs", str.pairs);
  str_cmd->add_option("--separation", str.separation);
  str_cmd->add_option("--seed", str.seed);
  str_cmd->add_option("--out", str.out, "JSON file (default stdout)");
  str_cmd->add_option("--edges-out", str.edges_out, "edge list CSV");

  LatticeOptions lat;
  auto* lat_cmd = app.add_subcommand("lattice", "site percolation on the cube lattice and A_k decay");
  lat_cmd->add_option("--d", lat.d);
  lat_cmd->add_option("--n", lat.n);
  lat_cmd->add_option("--p", lat.p);
  lat_cmd->add_option("--trials", lat.trials);
  lat_cmd->add_option("--decay-trials", lat.decay_trials);
  lat_cmd->add_option("--k", lat.k_list);
  lat_cmd->add_option("--seed", lat.seed);
  lat_cmd->add_option("--out", lat.out, "output directory");

  std::vector<int> const_dims = {2};
  std::string const_out;
  auto* const_cmd = app.add_subcommand("constants", "tabulated gamma* and p* with presets");
  const_cmd->add_option("--d", const_dims);
  const_cmd->add_option("--out", const_out, "JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (plan_cmd->parsed()) return run_plan(plan);
    if (camp_cmd->parsed()) return run_campaign_cmd(camp, *camp_cmd);
    if (comp_cmd->parsed()) return run_components(comp);
    if (str_cmd->parsed()) return run_stretch(str);
    if (lat_cmd->parsed()) return run_lattice(lat);
    if (const_cmd->parsed()) return run_constants(const_dims, const_out);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return kExitScenario;
  } catch (const EndpointInCollision& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return kExitScenario;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
