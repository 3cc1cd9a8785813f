#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critprm/geometry.hpp"

namespace critprm {

/// Raised when a scenario cannot be built, parsed or loaded.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Motion-planning instance in [0,1]^d with closed axis-aligned box obstacles.
class Scenario {
 public:
  Scenario(std::string name, std::size_t dim, std::vector<Box> obstacles, Point start, Point target);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Box>& obstacles() const { return obstacles_; }
  const Point& start() const { return start_; }
  const Point& target() const { return target_; }
  Box domain() const { return Box::unit(dim_); }

  /// Strictly inside the unit cube and in no obstacle; obstacle and cube
  /// boundaries collide.
  bool is_free(PointView x) const;
  /// The closed segment a-b meets no obstacle and stays in the cube.
  bool segment_free(PointView a, PointView b) const;
  /// Distance from x to the obstacles and to the cube boundary; 0 in collision.
  double clearance(PointView x) const;
  /// Cube volume minus the obstacle volumes clipped to the cube; exact when
  /// obstacles are pairwise disjoint (all builtins).
  double free_volume() const;

  /// ||s - t|| when the straight s-t segment is free (then it is optimal).
  std::optional<double> straight_line_optimum() const;

  bool operator==(const Scenario& other) const = default;

 private:
  void check_dim(PointView x) const;

  std::string name_;
  std::size_t dim_;
  std::vector<Box> obstacles_;
  Point start_;
  Point target_;
};

Scenario make_empty_hypercube(std::size_t d);

inline constexpr std::size_t kGridObstaclesMinDim = 2;
inline constexpr std::size_t kGridObstaclesMaxDim = 8;

/// 2^d centered cubical obstacles, one per half-side sub-cube, each covering
/// a quarter of its sub-cube. s = alpha * (1,...,1) with alpha equidistant
/// from the origin and the nearest obstacle; t = (1 - alpha) * (1,...,1).
Scenario make_grid_obstacles(std::size_t d);

/// Diagonal offset alpha of the grid-obstacles start point.
double grid_obstacles_alpha(std::size_t d);

/// Two walls leaving a free strip of width 0.55 between them; the walls are
/// staggered so every s-t path must traverse the strip.
Scenario make_corridor();

inline constexpr double kCorridorWidth = 0.55;

/// Builtin names: `empty-hypercube:d`, `grid-obstacles:d`, `corridor`.
Scenario make_builtin(const std::string& spec);

/// Builtin name or path to a JSON scenario file.
Scenario load_scenario(const std::string& ref);

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scn);

void save_scenario(const Scenario& scn, const std::filesystem::path& path);

/// Scalar cost over configuration space drawn from a closed set of kinds.
class CostMap {
 public:
  enum class Kind { CoordinateDistance, PointDistance, Clearance, Constant };

  /// |x_axis - value|
  static CostMap coordinate_distance(std::size_t axis, double value);
  /// ||x - p||
  static CostMap point_distance(Point p);
  /// -clearance(x); minimizing it maximizes the smallest clearance.
  static CostMap clearance(const Scenario& scn);
  static CostMap constant(double value);

  /// Parses `coord:AXIS:VALUE`, `point:x0,x1,...`, `clearance`, `constant:C`.
  static CostMap parse(const std::string& spec, const Scenario& scn);

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  double operator()(PointView x) const;
  ScalarField field() const;

 private:
  CostMap(Kind kind, std::string description) : kind_(kind), description_(std::move(description)) {}

  Kind kind_;
  std::string description_;
  std::size_t axis_ = 0;
  double value_ = 0.0;
  Point point_;
  std::shared_ptr<const Scenario> scenario_;
};

}  // namespace critprm
