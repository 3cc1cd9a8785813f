#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critprm/geometry.hpp"
#include "critprm/rng.hpp"

namespace critprm {

struct Neighbor {
  std::uint32_t vertex;
  double length;
};

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
  double length;

  bool operator==(const Edge&) const = default;
};

/// Predicate admitting an edge between two points (e.g. collision check).
using EdgeFilter = std::function<bool(PointView, PointView)>;

/// Undirected graph embedded in R^d with Euclidean edge lengths, stored as
/// sorted adjacency lists. Immutable after construction.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  /// Builds adjacency from an explicit edge list. Edges are symmetrized and
  /// deduplicated; self-loops and out-of-range endpoints are rejected.
  GeometricGraph(PointSet vertices, double radius, std::span<const Edge> edges);

  const PointSet& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  std::size_t dim() const { return vertices_.dim(); }
  double radius() const { return radius_; }
  PointView point(std::size_t v) const { return vertices_[v]; }

  std::span<const Neighbor> neighbors(std::size_t v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  /// Every edge once, u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

 private:
  PointSet vertices_;
  double radius_ = 0.0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Radius graph: (u,v) is an edge iff ||u - v|| <= radius and the optional
/// filter admits it. Neighbor search runs on a uniform grid of cell side
/// `radius`.
GeometricGraph build_rgg(const PointSet& points, double radius, const EdgeFilter& edge_filter = {});

struct ComponentReport {
  /// Component id of every vertex: the smallest vertex index in its component.
  std::vector<std::uint32_t> component_of;
  /// Component sizes, descending.
  std::vector<std::size_t> sizes;

  std::size_t largest_size() const { return sizes.empty() ? 0 : sizes[0]; }
  std::size_t second_size() const { return sizes.size() < 2 ? 0 : sizes[1]; }
  std::size_t component_count() const { return sizes.size(); }
};

ComponentReport connected_components(const GeometricGraph& g);

/// Components of the radius graph over `points` without materializing edges.
ComponentReport radius_components(const PointSet& points, double radius);

struct GraphPath {
  std::vector<std::uint32_t> vertices;
  double length = 0.0;

  /// Waypoints of the path; a single vertex becomes a zero-length segment.
  Path to_path(const PointSet& points) const;
};

/// Dijkstra over Euclidean edge lengths. Equal tentative distances are
/// resolved toward the smaller predecessor index. nullopt when unreachable.
std::optional<GraphPath> shortest_path(const GeometricGraph& g, std::uint32_t source, std::uint32_t target);

/// Dijkstra from `source` until the first vertex with is_target(v) is
/// settled, i.e. the nearest target by graph distance.
std::optional<GraphPath> shortest_path_to_any(const GeometricGraph& g, std::uint32_t source,
                                              const std::function<bool(std::uint32_t)>& is_target);

struct BottleneckPath {
  std::vector<std::uint32_t> vertices;
  double bottleneck = 0.0;
  double length = 0.0;
};

/// Symmetric cost of traversing edge (u, v), endpoints included.
using EdgeCost = std::function<double(std::uint32_t, std::uint32_t)>;

/// Minimax path: minimizes the maximum of `source_cost` and the costs of the
/// traversed edges. Among labels with equal bottleneck the shorter length is
/// kept, then the smaller predecessor index.
std::optional<BottleneckPath> minimax_path(const GeometricGraph& g, std::uint32_t source, std::uint32_t target,
                                           const EdgeCost& edge_cost, double source_cost);

struct StretchSample {
  std::uint32_t u;
  std::uint32_t v;
  double graph_distance;
  double euclidean_distance;
  double ratio;
};

struct StretchReport {
  std::vector<StretchSample> pairs;
  double max_ratio = 0.0;
  double p95_ratio = 0.0;
};

inline constexpr std::size_t kDefaultStretchPairs = 200;
inline constexpr double kDefaultStretchSeparation = 0.25;

/// Samples vertex pairs of the largest component at Euclidean separation
/// >= min_separation and reports graph/Euclidean distance ratios.
StretchReport estimate_stretch(const GeometricGraph& g, std::size_t pair_count, double min_separation, Rng& rng);

/// gamma*(d) * n^(-1/d) with the tabulated constant; throws
/// NoTabulatedConstant outside 2 <= d <= 11.
double critical_radius(int d, double n);

/// Same scaling with the large-d approximation of gamma*.
double asymptotic_critical_radius(int d, double n);

struct ScalingPoint {
  double n = 0.0;
  double radius = 0.0;
  double mean_largest = 0.0;
  double mean_largest_fraction = 0.0;
  double largest_over_log_n = 0.0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  /// Least-squares fit mean_largest = slope * log(n) + intercept.
  double slope = 0.0;
  double intercept = 0.0;
};

/// Largest-component size of PPP radius graphs in [0,1]^d at
/// r = gamma_fraction * gamma*(d) * n^(-1/d), averaged over trials.
ScalingReport subcritical_component_scaling(int d, double gamma_fraction, std::span<const double> n_list,
                                            std::size_t trials, std::uint64_t seed);

/// Edge list CSV: header `u,v,length`.
void write_edge_list_csv(std::ostream& out, const GeometricGraph& g);

inline constexpr const char* kComponentCsvHeader = "n,d,radius_label,trial,size_rank,size,fraction";

/// Rows of the component report CSV for the `max_rank` largest components.
/// `fraction` is size divided by the vertex count.
void write_component_rows(std::ostream& out, double n, int d, const std::string& radius_label, std::size_t trial,
                          const ComponentReport& report, std::size_t vertex_count, std::size_t max_rank = 2);

}  // namespace critprm
