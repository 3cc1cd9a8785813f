#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "critprm/geometry.hpp"
#include "critprm/rgg.hpp"
#include "critprm/scenario.hpp"

namespace critprm {

/// Raised when the start or target configuration is not free.
class EndpointInCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Radius presets. n is the expected number of samples (n > 1).

/// gamma * n^(-1/d)
double gamma_radius(std::size_t d, double n, double gamma);
/// PRM* query radius 2.5 * (log n / n)^(1/d).
inline constexpr double kPrmStarConstant = 2.5;
double r_prm_star(std::size_t d, double n);
/// FMT* radius (1 + eta) * 2 * (1/d)^(1/d) * (free_volume / b_d)^(1/d) *
/// (log n / n)^(1/d), eta = 0.1.
inline constexpr double kFmtStarMultiplier = 1.1;
double r_fmt_star(std::size_t d, double n, double free_volume = 1.0);

/// Roadmap over free samples plus the start and target vertices.
struct PrmGraph {
  GeometricGraph graph;
  std::uint32_t start_index = 0;
  std::uint32_t target_index = 0;
  double n = 0.0;
  double r_n = 0.0;
  double r_st = 0.0;
  std::uint64_t seed = 0;
  /// Points of the sampling process before the free-space filter.
  std::size_t samples_drawn = 0;
};

/// Appends s and t to `free_points` and joins them to every free point (and
/// to each other) within r_st along free segments. `edges` holds the edges
/// among `free_points`.
PrmGraph connect_endpoints(const Scenario& scn, PointSet free_points, std::vector<Edge> edges, double r_n, double r_st);

/// PPP of density n in [0,1]^d, filtered to free space, joined by free
/// segments of length <= r_n; s and t connect within r_st.
PrmGraph prm_build(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed);

struct PlanStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t samples_drawn = 0;
  double wall_time_ms = 0.0;
};

struct PlanResult {
  std::optional<Path> path;
  /// Path length; NaN without a path.
  double cost = std::numeric_limits<double>::quiet_NaN();
  /// Discretized bottleneck cost, set by bottleneck planners.
  std::optional<double> bottleneck_cost;
  PlanStats stats;

  bool success() const { return path.has_value(); }
};

/// Dijkstra from s to t over edge lengths.
PlanResult prm_query(const PrmGraph& g);

/// Minimax query over the same roadmap: edge cost is the bottleneck of the
/// cost map along the segment at spacing resolution (default r_n / 10).
PlanResult prm_bottleneck_query(const PrmGraph& g, const CostMap& m, std::optional<double> resolution = {});

/// prm_build + prm_query, timed.
PlanResult plan_prm(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed);

/// Batch FMT* over the same sample set prm_build would draw with this seed.
/// Sample-sample neighbors within r_n, endpoint neighbors within r_st.
PlanResult fmt_star(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed);

/// Bottleneck planner: minimax path over the PRM roadmap.
PlanResult btt(const Scenario& scn, double n, double r_n, double r_st, const CostMap& m, std::uint64_t seed);

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct RrtTree {
  PointSet nodes;
  /// parent[0] == kNoParent (the root s).
  std::vector<std::uint32_t> parent;
  bool reached = false;
  std::size_t iterations = 0;
  std::size_t samples_drawn = 0;
  std::size_t empty_iterations = 0;

  std::vector<Edge> edges() const;
};

/// RRT driven by an incremental PPP: each iteration draws Poisson(1)
/// samples; each sample extends the nearest node (smallest index on ties) by
/// at most eta if the segment is free. All iterations run.
RrtTree rrt_build(const Scenario& scn, const Point& s, const Box& goal, std::size_t iterations, double eta,
                  std::uint64_t seed);

/// Base connection radius as a function of the node count.
using RadiusSchedule1D = std::function<double(std::size_t)>;

struct RrgEdge {
  std::uint32_t u;
  std::uint32_t v;
  double length;
  /// Connection bound in force when the edge was created.
  double bound;
};

struct RrgRoadmap {
  PointSet nodes;
  std::vector<RrgEdge> edges;
  /// The underlying RRT parent pointers.
  std::vector<std::uint32_t> parent;
  Box goal = Box::unit(1);
  double eta = 0.0;
  double mu = 0.0;
  bool reached = false;
  std::size_t iterations = 0;
  std::size_t samples_drawn = 0;

  GeometricGraph graph() const;
};

/// RRG: the RRT extension step, then x_new connects to every node within
/// min((1 + mu) r_base(N), eta) and to s within min((1 + mu) r_st(N), eta),
/// N the node count at the start of the iteration.
RrgRoadmap rrg_build(const Scenario& scn, const Point& s, const Box& goal, std::size_t iterations, double eta,
                     double mu, const RadiusSchedule1D& r_base, const RadiusSchedule1D& r_st, std::uint64_t seed);

/// Defaults for rrg_build: r_base(N) = N^(-1/d) and r_st(N) = r_prm_star(d, N),
/// with N clamped to at least 2.
RadiusSchedule1D default_rrg_base_radius(std::size_t d);
RadiusSchedule1D default_rrg_st_radius(std::size_t d);

/// Goal box of the given side centered at the scenario target, clipped to the cube.
Box goal_region(const Scenario& scn, double side);

/// Shortest path from the root to the nearest goal node; t is appended when
/// the last segment to it is free.
PlanResult rrt_query(const Scenario& scn, const RrtTree& tree, const Box& goal);
PlanResult rrg_query(const Scenario& scn, const RrgRoadmap& roadmap);

inline constexpr std::size_t kShortcutAttempts = 200;

/// Randomized shortcutting (kShortcutAttempts attempts between random
/// arc-length positions) followed by greedy removal of redundant waypoints.
/// Endpoints are kept and the length never increases.
Path simplify_path(const Scenario& scn, const Path& path, std::uint64_t seed = 0);

/// Every segment of the path is free.
bool path_free(const Scenario& scn, const Path& path);

}  // namespace critprm
