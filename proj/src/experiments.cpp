#include "critprm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

#include "critprm/constants.hpp"
#include "critprm/planners.hpp"
#include "critprm/rgg.hpp"
#include "critprm/sampling.hpp"
#include "critprm/scenario.hpp"
#include "critprm/union_find.hpp"

#ifndef CRITPRM_GIT_HASH
#define CRITPRM_GIT_HASH "unknown"
#endif

namespace critprm {

namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::size_t worker_count(std::size_t requested, std::size_t units) {
  std::size_t n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::max<std::size_t>(1, std::min(n, units));
}

// Runs body(i) for i in [0, count) on a pool pulling indices from a shared counter.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const auto workers = worker_count(threads, count);
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct MeanStd {
  double mean = kNaN;
  double std = kNaN;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) {
    out.std = 0.0;
    return out;
  }
  double ss = 0.0;
  for (const double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / (n - 1.0));
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double resolve_rst(const CampaignConfig& cfg, const Scenario& scn, double n, double radius) {
  if (cfg.rst_preset == "prm-star") return r_prm_star(scn.dim(), n);
  if (cfg.rst_preset == "fmt-star") return r_fmt_star(scn.dim(), n, scn.free_volume());
  if (cfg.rst_preset == "rn") return radius;
  return std::stod(cfg.rst_preset);
}

std::vector<RadiusEntry> campaign_radii(const CampaignConfig& cfg, const Scenario& scn, double n) {
  const auto d = scn.dim();
  if (cfg.planner == "rrt") return {{"eta", cfg.eta}};
  if (cfg.planner == "rrg") return {{"rrg", default_rrg_base_radius(d)(static_cast<std::size_t>(n))}};
  std::vector<RadiusEntry> out;
  if (!cfg.gammas.empty()) {
    for (const double g : cfg.gammas) {
      char label[32];
      std::snprintf(label, sizeof label, "g%g", g);
      out.push_back({label, gamma_radius(d, n, g)});
    }
    return out;
  }
  const auto schedule = radius_schedule(n, d, cfg.k, cfg.gamma, cfg.include_prm_star, scn.free_volume());
  if (cfg.radius_labels.empty()) return schedule.entries;
  for (const auto& label : cfg.radius_labels) out.push_back(schedule.at(label));
  return out;
}

// Component fractions of the sample-sample part of the roadmap.
void sample_components(const PrmGraph& g, CampaignRecord& rec) {
  const std::uint32_t m = g.start_index;
  if (m == 0) {
    rec.largest_fraction = rec.second_fraction = 0.0;
    return;
  }
  DisjointSets sets(m);
  for (std::uint32_t u = 0; u < m; ++u) {
    for (const auto& nb : g.graph.neighbors(u)) {
      if (nb.vertex < m && u < nb.vertex) sets.unite(u, nb.vertex);
    }
  }
  std::vector<std::size_t> sizes;
  for (std::uint32_t v = 0; v < m; ++v) {
    if (sets.find(v) == v) sizes.push_back(sets.set_size(v));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  rec.largest_fraction = static_cast<double>(sizes[0]) / m;
  rec.second_fraction = sizes.size() > 1 ? static_cast<double>(sizes[1]) / m : 0.0;
}

CampaignRecord run_one(const CampaignConfig& cfg, const Scenario& scn, double n, const RadiusEntry& entry,
                       std::size_t trial, std::uint64_t seed) {
  CampaignRecord rec;
  rec.scenario = scn.name();
  rec.planner = cfg.planner;
  rec.d = scn.dim();
  rec.n = n;
  rec.radius_label = entry.label;
  rec.radius = entry.radius;
  rec.trial = trial;
  rec.seed = seed;
  rec.cost = rec.simplified_cost = rec.normalized_cost = rec.bottleneck_cost = kNaN;
  rec.largest_fraction = rec.second_fraction = kNaN;
  rec.r_st = kNaN;
  const auto start = std::chrono::steady_clock::now();
  try {
    PlanResult result;
    if (cfg.planner == "prm" || cfg.planner == "btt") {
      rec.r_st = resolve_rst(cfg, scn, n, entry.radius);
      const auto g = prm_build(scn, n, entry.radius, rec.r_st, seed);
      result = cfg.planner == "prm" ? prm_query(g) : prm_bottleneck_query(g, CostMap::parse(cfg.cost_map, scn));
      sample_components(g, rec);
    } else if (cfg.planner == "fmt") {
      rec.r_st = resolve_rst(cfg, scn, n, entry.radius);
      result = fmt_star(scn, n, entry.radius, rec.r_st, seed);
    } else {
      const auto iterations = static_cast<std::size_t>(std::llround(n));
      const auto goal = goal_region(scn, cfg.goal_side);
      if (cfg.planner == "rrt") {
        result = rrt_query(scn, rrt_build(scn, scn.start(), goal, iterations, cfg.eta, seed), goal);
      } else {
        const auto d = scn.dim();
        rec.r_st = default_rrg_st_radius(d)(iterations);
        result = rrg_query(scn, rrg_build(scn, scn.start(), goal, iterations, cfg.eta, cfg.mu,
                                          default_rrg_base_radius(d), default_rrg_st_radius(d), seed));
      }
    }
    rec.success = result.success();
    rec.vertex_count = result.stats.vertex_count;
    rec.edge_count = result.stats.edge_count;
    rec.samples_drawn = result.stats.samples_drawn;
    if (result.success()) {
      rec.cost = result.cost;
      if (result.bottleneck_cost) rec.bottleneck_cost = *result.bottleneck_cost;
      if (cfg.simplify) rec.simplified_cost = path_length(simplify_path(scn, *result.path, seed));
    }
  } catch (const std::exception& e) {
    rec.success = false;
    rec.error = e.what();
  }
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

const RadiusEntry& RadiusSchedule::at(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw ConfigError("radius label '" + label + "' is not in the schedule");
}

RadiusSchedule radius_schedule(double n, std::size_t d, int k, double gamma, bool include_prm_star,
                               double free_volume) {
  if (k < 1) throw ConfigError("schedule needs k >= 1");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(n > 1.0)) throw ConfigError("schedule needs n > 1");
  RadiusSchedule s;
  s.n = n;
  s.d = d;
  s.k = k;
  s.gamma = gamma;
  const double r0 = gamma_radius(d, n, gamma);
  const double rk = r_fmt_star(d, n, free_volume);
  if (!(rk > r0)) throw ConfigError("r_FMT* does not exceed r_0 at this n; schedule would not increase");
  const double delta = (rk - r0) / k;
  for (int i = 0; i < k; ++i) s.entries.push_back({"r" + std::to_string(i), r0 + i * delta});
  s.entries.push_back({"r" + std::to_string(k), rk});
  if (include_prm_star) {
    const double rp = r_prm_star(d, n);
    if (!(rp > rk)) throw ConfigError("r_PRM* does not exceed r_FMT* at this n");
    s.entries.push_back({"rPRM*", rp});
  }
  return s;
}

void CampaignConfig::validate() const {
  if (std::find(std::begin(kPlannerNames), std::end(kPlannerNames), planner) == std::end(kPlannerNames))
    throw ConfigError("unknown planner '" + planner + "'");
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (const double n : n_list) {
    if (!(n > 1.0) || !std::isfinite(n)) throw ConfigError("every n must exceed 1");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (k < 1) throw ConfigError("k must be at least 1");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  for (const double g : gammas) {
    if (!(g > 0.0)) throw ConfigError("gammas must be positive");
  }
  if (rst_preset != "prm-star" && rst_preset != "fmt-star" && rst_preset != "rn") {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rst_preset, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad r_st preset '" + rst_preset + "'");
    }
    if (used != rst_preset.size() || !(v > 0.0)) throw ConfigError("bad r_st preset '" + rst_preset + "'");
  }
  if (!(eta > 0.0) || !(mu > 0.0) || !(goal_side > 0.0)) throw ConfigError("eta, mu and goal_side must be positive");
}

CampaignConfig campaign_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"scenario", "planner",  "n_list",     "trials",   "k",
                                              "gamma",    "include_prm_star",       "radius_labels",
                                              "gammas",   "rst_preset", "seed",     "cost_map", "simplify",
                                              "eta",      "mu",       "goal_side",  "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  CampaignConfig cfg;
  if (j.contains("scenario")) cfg.scenario = get_field<std::string>(j, "scenario");
  if (j.contains("planner")) cfg.planner = get_field<std::string>(j, "planner");
  if (j.contains("n_list")) cfg.n_list = get_field<std::vector<double>>(j, "n_list");
  if (j.contains("trials")) cfg.trials = get_field<std::size_t>(j, "trials");
  if (j.contains("k")) cfg.k = get_field<int>(j, "k");
  if (j.contains("gamma")) cfg.gamma = get_field<double>(j, "gamma");
  if (j.contains("include_prm_star")) cfg.include_prm_star = get_field<bool>(j, "include_prm_star");
  if (j.contains("radius_labels")) cfg.radius_labels = get_field<std::vector<std::string>>(j, "radius_labels");
  if (j.contains("gammas")) cfg.gammas = get_field<std::vector<double>>(j, "gammas");
  if (j.contains("rst_preset")) {
    const auto& v = j.at("rst_preset");
    cfg.rst_preset = v.is_number() ? format_double(v.get<double>()) : get_field<std::string>(j, "rst_preset");
  }
  if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("cost_map")) cfg.cost_map = get_field<std::string>(j, "cost_map");
  if (j.contains("simplify")) cfg.simplify = get_field<bool>(j, "simplify");
  if (j.contains("eta")) cfg.eta = get_field<double>(j, "eta");
  if (j.contains("mu")) cfg.mu = get_field<double>(j, "mu");
  if (j.contains("goal_side")) cfg.goal_side = get_field<double>(j, "goal_side");
  if (j.contains("threads")) cfg.threads = get_field<std::size_t>(j, "threads");
  return cfg;
}

json campaign_config_to_json(const CampaignConfig& cfg) {
  return {{"scenario", cfg.scenario},
          {"planner", cfg.planner},
          {"n_list", cfg.n_list},
          {"trials", cfg.trials},
          {"k", cfg.k},
          {"gamma", cfg.gamma},
          {"include_prm_star", cfg.include_prm_star},
          {"radius_labels", cfg.radius_labels},
          {"gammas", cfg.gammas},
          {"rst_preset", cfg.rst_preset},
          {"seed", cfg.seed},
          {"cost_map", cfg.cost_map},
          {"simplify", cfg.simplify},
          {"eta", cfg.eta},
          {"mu", cfg.mu},
          {"goal_side", cfg.goal_side},
          {"threads", cfg.threads}};
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n_index, std::size_t trial) {
  return derive_seed(derive_seed(master, n_index), trial);
}

CampaignReport run_campaign(const CampaignConfig& cfg, const std::function<void(const CampaignRecord&)>& sink) {
  cfg.validate();
  const auto scn = load_scenario(cfg.scenario);
  if (!scn.is_free(scn.start()) || !scn.is_free(scn.target()))
    throw ScenarioError("scenario '" + scn.name() + "' has a start or target in collision");
  if (cfg.planner == "btt") {
    try {
      CostMap::parse(cfg.cost_map, scn);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  std::vector<std::vector<RadiusEntry>> radii;
  for (const double n : cfg.n_list) radii.push_back(campaign_radii(cfg, scn, n));

  struct Keyed {
    std::tuple<std::size_t, std::size_t, std::size_t> key;
    CampaignRecord record;
  };
  std::vector<Keyed> done;
  std::mutex mutex;
  const std::size_t units = cfg.n_list.size() * cfg.trials;
  parallel_for(units, cfg.threads, [&](std::size_t unit) {
    const std::size_t ni = unit / cfg.trials;
    const std::size_t trial = unit % cfg.trials;
    const auto seed = trial_seed(cfg.seed, ni, trial);
    for (std::size_t ri = 0; ri < radii[ni].size(); ++ri) {
      auto rec = run_one(cfg, scn, cfg.n_list[ni], radii[ni][ri], trial, seed);
      std::lock_guard lock(mutex);
      if (sink) sink(rec);
      done.push_back({{ni, ri, trial}, std::move(rec)});
    }
  });
  std::sort(done.begin(), done.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });

  CampaignReport report;
  report.config = cfg;
  for (auto& k : done) report.records.push_back(std::move(k.record));
  if (const auto optimum = scn.straight_line_optimum()) {
    report.normalization = "analytic";
    report.normalizer = *optimum;
  } else {
    report.normalization = "best-observed";
    report.normalizer = kNaN;
    for (const auto& r : report.records) {
      for (const double c : {r.cost, r.simplified_cost}) {
        if (!std::isnan(c) && !(c >= report.normalizer)) report.normalizer = c;
      }
    }
  }
  if (cfg.planner != "btt") {
    for (auto& r : report.records) {
      if (r.success && !std::isnan(report.normalizer)) r.normalized_cost = r.cost / report.normalizer;
    }
  }
  report.aggregates = aggregate_records(report.records);
  return report;
}

std::vector<AggregateRow> aggregate_records(const std::vector<CampaignRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::size_t, double, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<std::vector<const CampaignRecord*>> groups;
  for (const auto& r : records) {
    const Key key{r.scenario, r.planner, r.d, r.n, r.radius_label};
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  for (const auto& group : groups) {
    const auto& first = *group.front();
    AggregateRow row;
    row.scenario = first.scenario;
    row.planner = first.planner;
    row.d = first.d;
    row.n = first.n;
    row.radius_label = first.radius_label;
    row.radius = first.radius;
    row.trials = group.size();
    std::vector<double> cost, simplified, normalized, time, largest, second;
    for (const auto* r : group) {
      if (r->success) ++row.successes;
      if (r->success && !std::isnan(r->cost)) cost.push_back(r->cost);
      if (r->success && !std::isnan(r->simplified_cost)) simplified.push_back(r->simplified_cost);
      if (r->success && !std::isnan(r->normalized_cost)) normalized.push_back(r->normalized_cost);
      time.push_back(r->wall_time_ms);
      if (!std::isnan(r->largest_fraction)) largest.push_back(r->largest_fraction);
      if (!std::isnan(r->second_fraction)) second.push_back(r->second_fraction);
    }
    row.success_rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
    const auto c = mean_std(cost), s = mean_std(simplified), nm = mean_std(normalized);
    row.cost_mean = c.mean;
    row.cost_std = c.std;
    row.simplified_cost_mean = s.mean;
    row.simplified_cost_std = s.std;
    row.normalized_cost_mean = nm.mean;
    row.normalized_cost_std = nm.std;
    row.wall_time_ms_mean = mean_std(time).mean;
    row.wall_time_ms_median = median(time);
    row.largest_fraction_mean = mean_std(largest).mean;
    row.second_fraction_mean = mean_std(second).mean;
    rows.push_back(row);
  }
  return rows;
}

void write_record_row(std::ostream& out, const CampaignRecord& r) {
  out << csv_field(r.scenario) << ',' << r.planner << ',' << r.d << ',' << format_double(r.n) << ','
      << csv_field(r.radius_label) << ',' << format_double(r.radius) << ',' << format_double(r.r_st) << ','
      << r.trial << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << format_double(r.cost) << ','
      << format_double(r.simplified_cost) << ',' << format_double(r.normalized_cost) << ','
      << format_double(r.bottleneck_cost) << ',' << format_double(r.wall_time_ms) << ','
      << format_double(r.largest_fraction) << ',' << format_double(r.second_fraction) << ',' << r.vertex_count
      << ',' << r.edge_count << ',' << r.samples_drawn << ',' << csv_field(r.error) << '\n';
}

void write_records_csv(std::ostream& out, const std::vector<CampaignRecord>& records) {
  out << kRecordsCsvHeader << '\n';
  for (const auto& r : records) write_record_row(out, r);
}

void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregatesCsvHeader << '\n';
  for (const auto& a : rows) {
    out << csv_field(a.scenario) << ',' << a.planner << ',' << a.d << ',' << format_double(a.n) << ','
        << csv_field(a.radius_label) << ',' << format_double(a.radius) << ',' << a.trials << ',' << a.successes
        << ',' << format_double(a.success_rate) << ',' << format_double(a.cost_mean) << ','
        << format_double(a.cost_std) << ',' << format_double(a.simplified_cost_mean) << ','
        << format_double(a.simplified_cost_std) << ',' << format_double(a.normalized_cost_mean) << ','
        << format_double(a.normalized_cost_std) << ',' << format_double(a.wall_time_ms_mean) << ','
        << format_double(a.wall_time_ms_median) << ',' << format_double(a.largest_fraction_mean) << ','
        << format_double(a.second_fraction_mean) << '\n';
  }
}

json campaign_manifest(const CampaignReport& report) {
  return {{"tool", "critprm"},
          {"git_hash", git_hash()},
          {"seed", report.config.seed},
          {"config", campaign_config_to_json(report.config)},
          {"records", report.records.size()},
          {"normalization", report.normalization},
          {"normalizer", std::isnan(report.normalizer) ? json(nullptr) : json(report.normalizer)},
          {"files", {"records.csv", "aggregates.csv"}}};
}

CampaignReport run_campaign_to_dir(const CampaignConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto partial_path = dir / "records.csv.partial";
  std::ofstream partial(partial_path);
  if (!partial) throw std::runtime_error("cannot write " + partial_path.string());
  partial << kRecordsCsvHeader << '\n';
  auto report = run_campaign(cfg, [&](const CampaignRecord& r) {
    write_record_row(partial, r);
    partial.flush();
  });
  partial.close();
  {
    std::ofstream out(dir / "records.csv");
    write_records_csv(out, report.records);
  }
  {
    std::ofstream out(dir / "aggregates.csv");
    write_aggregates_csv(out, report.aggregates);
  }
  {
    std::ofstream out(dir / "manifest.json");
    out << campaign_manifest(report).dump(2) << '\n';
  }
  std::filesystem::remove(partial_path);
  return report;
}

ComponentTable component_table(const std::vector<std::size_t>& d_list, const std::vector<double>& n_list,
                               const std::vector<std::string>& radius_labels, std::size_t trials, std::uint64_t seed,
                               int k, double gamma, std::size_t threads) {
  if (d_list.empty() || n_list.empty() || radius_labels.empty()) throw ConfigError("component table needs d, n and labels");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  struct Cell {
    std::size_t d;
    std::size_t ni;
    std::vector<RadiusEntry> radii;
  };
  std::vector<Cell> cells;
  for (const auto d : d_list) {
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
      const auto schedule = radius_schedule(n_list[ni], d, k, gamma, true);
      Cell cell{d, ni, {}};
      for (const auto& label : radius_labels) cell.radii.push_back(schedule.at(label));
      cells.push_back(std::move(cell));
    }
  }
  std::vector<ComponentTrial> results(cells.size() * trials * radius_labels.size());
  parallel_for(cells.size() * trials, threads, [&](std::size_t unit) {
    const auto& cell = cells[unit / trials];
    const std::size_t trial = unit % trials;
    const double n = n_list[cell.ni];
    const auto sample = sample_ppp(n, Box::unit(cell.d), derive_seed(trial_seed(seed, cell.ni, trial), cell.d));
    for (std::size_t li = 0; li < cell.radii.size(); ++li) {
      const auto report = radius_components(sample.points, cell.radii[li].radius);
      results[unit * radius_labels.size() + li] = {cell.d,           n, cell.radii[li].label, trial,
                                                   sample.points.size(), report.largest_size(),
                                                   report.second_size()};
    }
  });
  ComponentTable table;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t li = 0; li < radius_labels.size(); ++li) {
      ComponentCell out{cells[c].d, n_list[cells[c].ni], cells[c].radii[li].label, cells[c].radii[li].radius, trials,
                        0.0, 0.0};
      for (std::size_t t = 0; t < trials; ++t) {
        const auto& r = results[(c * trials + t) * radius_labels.size() + li];
        if (r.vertex_count == 0) continue;
        out.largest_fraction_mean += static_cast<double>(r.largest) / static_cast<double>(r.vertex_count);
        out.second_fraction_mean += static_cast<double>(r.second) / static_cast<double>(r.vertex_count);
      }
      out.largest_fraction_mean /= static_cast<double>(trials);
      out.second_fraction_mean /= static_cast<double>(trials);
      table.cells.push_back(out);
    }
  }
  table.trials = std::move(results);
  return table;
}

void write_component_table_csv(std::ostream& out, const ComponentTable& table) {
  out << kComponentTableCsvHeader << '\n';
  for (const auto& c : table.cells) {
    out << c.d << ',' << format_double(c.n) << ',' << csv_field(c.radius_label) << ',' << format_double(c.radius)
        << ',' << c.trials << ',' << format_double(c.largest_fraction_mean) << ','
        << format_double(c.second_fraction_mean) << '\n';
  }
}

void write_component_trials_csv(std::ostream& out, const ComponentTable& table) {
  out << kComponentCsvHeader << '\n';
  for (const auto& t : table.trials) {
    ComponentReport report;
    report.sizes = {t.largest, t.second};
    write_component_rows(out, t.n, static_cast<int>(t.d), t.radius_label, t.trial, report, t.vertex_count);
  }
}

ConstantsEntry constants(int d) {
  if (d < 1) throw ConfigError("dimension must be positive");
  ConstantsEntry e;
  e.d = d;
  try {
    e.gamma_star = gamma_star(d);
  } catch (const NoTabulatedConstant& ex) {
    e.gamma_star_error = ex.what();
  }
  try {
    e.p_star = p_star(d);
  } catch (const NoTabulatedConstant& ex) {
    e.p_star_error = ex.what();
  }
  e.asymptotic_gamma_star = asymptotic_gamma_star(d);
  e.prm_star_coefficient = kPrmStarConstant;
  const double inv_d = 1.0 / d;
  e.fmt_star_coefficient =
      kFmtStarMultiplier * 2.0 * std::pow(inv_d, inv_d) * std::pow(1.0 / unit_ball_volume(d), inv_d);
  return e;
}

json constants_to_json(const ConstantsEntry& e) {
  json j;
  j["d"] = e.d;
  j["gamma_star"] = e.gamma_star ? json(*e.gamma_star) : json(nullptr);
  if (!e.gamma_star) j["gamma_star_error"] = e.gamma_star_error;
  j["gamma_star_provenance"] = gamma_star_provenance();
  j["p_star"] = e.p_star ? json(*e.p_star) : json(nullptr);
  if (!e.p_star) j["p_star_error"] = e.p_star_error;
  j["p_star_provenance"] = p_star_provenance();
  j["presets"] = {{"asymptotic_gamma_star", e.asymptotic_gamma_star},
                  {"r_prm_star", "c * (log n / n)^(1/d), c = " + format_double(e.prm_star_coefficient)},
                  {"r_prm_star_coefficient", e.prm_star_coefficient},
                  {"r_fmt_star", "1.1 * 2 * (1/d)^(1/d) * (free_volume / b_d)^(1/d) * (log n / n)^(1/d)"},
                  {"r_fmt_star_coefficient_unit_cube", e.fmt_star_coefficient}};
  return j;
}

std::string git_hash() { return CRITPRM_GIT_HASH; }

}  // namespace critprm
