#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace critprm {

/// Raised for invalid campaign or CLI configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadiusEntry {
  std::string label;
  double radius = 0.0;
};

/// r_0 = gamma n^(-1/d), r_k = r_FMT*, r_i = r_0 + i (r_k - r_0) / k, and
/// optionally r_{k+1} = r_PRM* labelled "rPRM*".
struct RadiusSchedule {
  double n = 0.0;
  std::size_t d = 0;
  int k = 0;
  double gamma = 0.0;
  std::vector<RadiusEntry> entries;

  const RadiusEntry& at(const std::string& label) const;
};

RadiusSchedule radius_schedule(double n, std::size_t d, int k, double gamma, bool include_prm_star = false,
                               double free_volume = 1.0);

inline constexpr const char* kPlannerNames[] = {"prm", "fmt", "btt", "rrg", "rrt"};

struct CampaignConfig {
  std::string scenario = "empty-hypercube:2";
  std::string planner = "prm";
  std::vector<double> n_list;
  std::size_t trials = 50;
  int k = 10;
  double gamma = 1.0;
  bool include_prm_star = false;
  /// Subset of schedule labels to run; empty runs the whole schedule.
  std::vector<std::string> radius_labels;
  /// When nonempty, replaces the schedule by r = g * n^(-1/d) per entry,
  /// labelled "g<value>".
  std::vector<double> gammas;
  /// prm-star | fmt-star | rn | a positive number.
  std::string rst_preset = "prm-star";
  std::uint64_t seed = 1;
  std::string cost_map = "coord:1:0.5";
  bool simplify = false;
  /// RRT/RRG steering bound, inflation and goal box side.
  double eta = 0.2;
  double mu = 0.1;
  double goal_side = 0.1;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

CampaignConfig campaign_config_from_json(const nlohmann::json& j);
nlohmann::json campaign_config_to_json(const CampaignConfig& cfg);

struct CampaignRecord {
  std::string scenario;
  std::string planner;
  std::size_t d = 0;
  double n = 0.0;
  std::string radius_label;
  double radius = 0.0;
  double r_st = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double cost = 0.0;
  double simplified_cost = 0.0;
  double normalized_cost = 0.0;
  double bottleneck_cost = 0.0;
  double wall_time_ms = 0.0;
  double largest_fraction = 0.0;
  double second_fraction = 0.0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t samples_drawn = 0;
  std::string error;
};

struct AggregateRow {
  std::string scenario;
  std::string planner;
  std::size_t d = 0;
  double n = 0.0;
  std::string radius_label;
  double radius = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double cost_mean = 0.0;
  double cost_std = 0.0;
  double simplified_cost_mean = 0.0;
  double simplified_cost_std = 0.0;
  double normalized_cost_mean = 0.0;
  double normalized_cost_std = 0.0;
  double wall_time_ms_mean = 0.0;
  double wall_time_ms_median = 0.0;
  double largest_fraction_mean = 0.0;
  double second_fraction_mean = 0.0;
};

struct CampaignReport {
  CampaignConfig config;
  /// Sorted by (n, radius index, trial).
  std::vector<CampaignRecord> records;
  std::vector<AggregateRow> aggregates;
  /// "analytic" or "best-observed".
  std::string normalization;
  double normalizer = 0.0;
};

/// Absent numeric values (no path, not applicable) are NaN and print as
/// empty CSV fields.
inline constexpr const char* kRecordsCsvHeader =
    "scenario,planner,d,n,radius_label,radius,r_st,trial,seed,success,cost,simplified_cost,normalized_cost,"
    "bottleneck_cost,wall_time_ms,largest_fraction,second_fraction,vertex_count,edge_count,samples_drawn,error";
inline constexpr const char* kAggregatesCsvHeader =
    "scenario,planner,d,n,radius_label,radius,trials,successes,success_rate,cost_mean,cost_std,"
    "simplified_cost_mean,simplified_cost_std,normalized_cost_mean,normalized_cost_std,wall_time_ms_mean,"
    "wall_time_ms_median,largest_fraction_mean,second_fraction_mean";

/// Seed of the sample set shared by every radius and planner for (n, trial).
std::uint64_t trial_seed(std::uint64_t master, std::size_t n_index, std::size_t trial);

/// Runs trials x radii x n_list planner invocations on a worker pool. Each
/// completed record is passed to `sink` (from a single thread at a time).
/// A trial that throws becomes a failed record carrying the message.
CampaignReport run_campaign(const CampaignConfig& cfg,
                            const std::function<void(const CampaignRecord&)>& sink = {});

std::vector<AggregateRow> aggregate_records(const std::vector<CampaignRecord>& records);

void write_record_row(std::ostream& out, const CampaignRecord& r);
void write_records_csv(std::ostream& out, const std::vector<CampaignRecord>& records);
void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
nlohmann::json campaign_manifest(const CampaignReport& report);

/// Writes records.csv, aggregates.csv and manifest.json to `dir`, streaming
/// records to records.csv.partial while the campaign runs.
CampaignReport run_campaign_to_dir(const CampaignConfig& cfg, const std::filesystem::path& dir);

struct ComponentCell {
  std::size_t d = 0;
  double n = 0.0;
  std::string radius_label;
  double radius = 0.0;
  std::size_t trials = 0;
  double largest_fraction_mean = 0.0;
  double second_fraction_mean = 0.0;
};

/// Per-trial component measurement, for the component report CSV.
struct ComponentTrial {
  std::size_t d = 0;
  double n = 0.0;
  std::string radius_label;
  std::size_t trial = 0;
  std::size_t vertex_count = 0;
  std::size_t largest = 0;
  std::size_t second = 0;
};

struct ComponentTable {
  std::vector<ComponentCell> cells;
  std::vector<ComponentTrial> trials;
};

inline constexpr const char* kComponentTableCsvHeader =
    "d,n,radius_label,radius,trials,largest_fraction_mean,second_fraction_mean";

/// Mean largest/second component fractions of PPP radius graphs in the empty
/// hypercube, per (d, n, schedule label). Fractions are relative to the
/// number of sampled points.
ComponentTable component_table(const std::vector<std::size_t>& d_list, const std::vector<double>& n_list,
                               const std::vector<std::string>& radius_labels, std::size_t trials, std::uint64_t seed,
                               int k = 10, double gamma = 1.0, std::size_t threads = 0);

void write_component_table_csv(std::ostream& out, const ComponentTable& table);
void write_component_trials_csv(std::ostream& out, const ComponentTable& table);

struct ConstantsEntry {
  int d = 0;
  std::optional<double> gamma_star;
  std::string gamma_star_error;
  std::optional<double> p_star;
  std::string p_star_error;
  double asymptotic_gamma_star = 0.0;
  double prm_star_coefficient = 0.0;
  double fmt_star_coefficient = 0.0;
};

/// Registry lookup; out-of-range constants are reported per constant.
ConstantsEntry constants(int d);
nlohmann::json constants_to_json(const ConstantsEntry& entry);

std::string git_hash();

}  // namespace critprm
