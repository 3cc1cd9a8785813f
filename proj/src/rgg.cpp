#include "critprm/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "critprm/constants.hpp"
#include "critprm/sampling.hpp"
#include "critprm/spatial_grid.hpp"
#include "critprm/union_find.hpp"

namespace critprm {

namespace {

constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

ComponentReport report_from_sets(DisjointSets& sets) {
  const auto n = static_cast<std::uint32_t>(sets.element_count());
  ComponentReport report;
  report.component_of.assign(n, kNoVertex);
  std::vector<std::uint32_t> root_label(n, kNoVertex);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto root = sets.find(v);
    if (root_label[root] == kNoVertex) {
      root_label[root] = v;  // first visit is the smallest index
      report.sizes.push_back(sets.set_size(root));
    }
    report.component_of[v] = root_label[root];
  }
  std::sort(report.sizes.begin(), report.sizes.end(), std::greater<>());
  return report;
}

std::vector<std::uint32_t> unwind(const std::vector<std::uint32_t>& pred, std::uint32_t target) {
  std::vector<std::uint32_t> path;
  for (auto v = target; v != kNoVertex; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

void check_vertex(const GeometricGraph& g, std::uint32_t v) {
  if (v >= g.vertex_count()) throw std::out_of_range("vertex index out of range");
}

}  // namespace

GeometricGraph::GeometricGraph(PointSet vertices, double radius, std::span<const Edge> edges)
    : vertices_(std::move(vertices)), radius_(radius) {
  const std::size_t n = vertices_.size();
  std::vector<std::size_t> degree(n + 1, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    adjacency_[cursor[e.u]++] = {e.v, e.length};
    adjacency_[cursor[e.v]++] = {e.u, e.length};
  }
  // Sort and drop duplicate edges, then compact.
  std::vector<std::size_t> new_offsets(n + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    last = std::unique(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex == b.vertex; });
    new_offsets[v] = out;
    for (auto it = first; it != last; ++it) adjacency_[out++] = *it;
  }
  new_offsets[n] = out;
  adjacency_.resize(out);
  offsets_ = std::move(new_offsets);
}

std::vector<Edge> GeometricGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (std::uint32_t u = 0; u < vertex_count(); ++u) {
    for (const auto& nb : neighbors(u)) {
      if (u < nb.vertex) result.push_back({u, nb.vertex, nb.length});
    }
  }
  return result;
}

GeometricGraph build_rgg(const PointSet& points, double radius, const EdgeFilter& edge_filter) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  std::vector<Edge> edges;
  for_each_pair_within(points, radius, [&](std::uint32_t i, std::uint32_t j, double dist) {
    if (!edge_filter || edge_filter(points[i], points[j])) edges.push_back({i, j, dist});
  });
  return GeometricGraph(points, radius, edges);
}

ComponentReport connected_components(const GeometricGraph& g) {
  DisjointSets sets(g.vertex_count());
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.vertex) sets.unite(u, nb.vertex);
    }
  }
  return report_from_sets(sets);
}

ComponentReport radius_components(const PointSet& points, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  DisjointSets sets(points.size());
  for_each_pair_within(points, radius, [&](std::uint32_t i, std::uint32_t j, double) { sets.unite(i, j); });
  return report_from_sets(sets);
}

Path GraphPath::to_path(const PointSet& points) const {
  std::vector<Point> waypoints;
  waypoints.reserve(vertices.size() + 1);
  for (const auto v : vertices) waypoints.push_back(points.point(v));
  if (waypoints.size() == 1) waypoints.push_back(waypoints.front());
  return Path(std::move(waypoints));
}

std::optional<GraphPath> shortest_path(const GeometricGraph& g, std::uint32_t source, std::uint32_t target) {
  check_vertex(g, target);
  return shortest_path_to_any(g, source, [target](std::uint32_t v) { return v == target; });
}

std::optional<GraphPath> shortest_path_to_any(const GeometricGraph& g, std::uint32_t source,
                                              const std::function<bool(std::uint32_t)>& is_target) {
  check_vertex(g, source);
  std::uint32_t reached = kNoVertex;
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::uint32_t> pred(n, kNoVertex);
  std::vector<char> settled(n, 0);
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d > dist[u]) continue;
    settled[u] = 1;
    if (is_target(u)) {
      reached = u;
      break;
    }
    for (const auto& nb : g.neighbors(u)) {
      const auto w = nb.vertex;
      if (settled[w]) continue;
      const double nd = d + nb.length;
      if (nd < dist[w] || (nd == dist[w] && u < pred[w])) {
        const bool improved = nd < dist[w];
        dist[w] = nd;
        pred[w] = u;
        if (improved) heap.emplace(nd, w);
      }
    }
  }
  if (reached == kNoVertex) return std::nullopt;
  return GraphPath{unwind(pred, reached), dist[reached]};
}

std::optional<BottleneckPath> minimax_path(const GeometricGraph& g, std::uint32_t source, std::uint32_t target,
                                           const EdgeCost& edge_cost, double source_cost) {
  check_vertex(g, source);
  check_vertex(g, target);
  struct Label {
    double bottleneck;
    double length;
    bool operator<(const Label& o) const {
      return bottleneck < o.bottleneck || (bottleneck == o.bottleneck && length < o.length);
    }
    bool operator==(const Label& o) const = default;
  };
  const std::size_t n = g.vertex_count();
  std::vector<Label> label(n, Label{kInf, kInf});
  std::vector<std::uint32_t> pred(n, kNoVertex);
  std::vector<char> settled(n, 0);
  using Entry = std::tuple<double, double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  label[source] = {source_cost, 0.0};
  heap.emplace(source_cost, 0.0, source);
  while (!heap.empty()) {
    const auto [b, len, u] = heap.top();
    heap.pop();
    if (settled[u] || Label{label[u]} < Label{b, len}) continue;
    settled[u] = 1;
    if (u == target) break;
    for (const auto& nb : g.neighbors(u)) {
      const auto w = nb.vertex;
      if (settled[w]) continue;
      const Label candidate{std::max(b, edge_cost(u, w)), len + nb.length};
      if (candidate < label[w] || (candidate == label[w] && u < pred[w])) {
        const bool improved = candidate < label[w];
        label[w] = candidate;
        pred[w] = u;
        if (improved) heap.emplace(candidate.bottleneck, candidate.length, w);
      }
    }
  }
  if (!settled[target]) return std::nullopt;
  return BottleneckPath{unwind(pred, target), label[target].bottleneck, label[target].length};
}

StretchReport estimate_stretch(const GeometricGraph& g, std::size_t pair_count, double min_separation, Rng& rng) {
  if (!(min_separation > g.radius())) throw std::invalid_argument("min_separation must exceed the graph radius");
  const auto components = connected_components(g);
  if (components.largest_size() < 2) throw std::runtime_error("largest component has fewer than 2 vertices");
  // Vertices of the largest component (ties resolved toward the smallest id).
  std::vector<std::size_t> count_by_id(g.vertex_count(), 0);
  for (const auto id : components.component_of) ++count_by_id[id];
  const auto largest_id = static_cast<std::uint32_t>(
      std::max_element(count_by_id.begin(), count_by_id.end()) - count_by_id.begin());
  std::vector<std::uint32_t> members;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (components.component_of[v] == largest_id) members.push_back(v);
  }

  constexpr std::size_t kAttemptsPerPair = 1000;
  const double sep2 = min_separation * min_separation;
  StretchReport report;
  for (std::size_t k = 0; k < pair_count; ++k) {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> chosen;
    for (std::size_t attempt = 0; attempt < kAttemptsPerPair && !chosen; ++attempt) {
      const auto u = members[rng.below(members.size())];
      const auto v = members[rng.below(members.size())];
      if (distance_squared_unchecked(g.point(u), g.point(v)) >= sep2) chosen = {u, v};
    }
    if (!chosen) {
      if (report.pairs.empty()) throw std::runtime_error("largest component has no pair at the requested separation");
      break;
    }
    const auto [u, v] = *chosen;
    const auto path = shortest_path(g, u, v);
    const double chord = euclidean_distance(g.point(u), g.point(v));
    report.pairs.push_back({u, v, path->length, chord, path->length / chord});
  }
  std::vector<double> ratios;
  for (const auto& p : report.pairs) ratios.push_back(p.ratio);
  std::sort(ratios.begin(), ratios.end());
  report.max_ratio = ratios.back();
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(ratios.size())));
  report.p95_ratio = ratios[std::min(ratios.size() - 1, rank == 0 ? 0 : rank - 1)];
  return report;
}

double critical_radius(int d, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("n must be positive");
  return gamma_star(d) * std::pow(n, -1.0 / d);
}

double asymptotic_critical_radius(int d, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("n must be positive");
  return asymptotic_gamma_star(d) * std::pow(n, -1.0 / d);
}

ScalingReport subcritical_component_scaling(int d, double gamma_fraction, std::span<const double> n_list,
                                            std::size_t trials, std::uint64_t seed) {
  if (!(gamma_fraction > 0.0)) throw std::invalid_argument("gamma fraction must be positive");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  ScalingReport report;
  const auto cube = Box::unit(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double n = n_list[i];
    ScalingPoint point;
    point.n = n;
    point.radius = gamma_fraction * critical_radius(d, n);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto sample = sample_ppp(n, cube, derive_seed(derive_seed(seed, i), t));
      const auto comps = radius_components(sample.points, point.radius);
      point.mean_largest += static_cast<double>(comps.largest_size());
      if (!sample.points.empty())
        point.mean_largest_fraction += static_cast<double>(comps.largest_size()) / static_cast<double>(sample.points.size());
    }
    point.mean_largest /= static_cast<double>(trials);
    point.mean_largest_fraction /= static_cast<double>(trials);
    point.largest_over_log_n = point.mean_largest / std::log(n);
    report.points.push_back(point);
  }
  if (report.points.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(report.points.size());
    for (const auto& p : report.points) {
      const double x = std::log(p.n);
      sx += x;
      sy += p.mean_largest;
      sxx += x * x;
      sxy += x * p.mean_largest;
    }
    report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    report.intercept = (sy - report.slope * sx) / m;
  }
  return report;
}

void write_edge_list_csv(std::ostream& out, const GeometricGraph& g) {
  out << "u,v,length\n";
  const auto old_precision = out.precision(17);
  for (const auto& e : g.edges()) out << e.u << ',' << e.v << ',' << e.length << '\n';
  out.precision(old_precision);
}

void write_component_rows(std::ostream& out, double n, int d, const std::string& radius_label, std::size_t trial,
                          const ComponentReport& report, std::size_t vertex_count, std::size_t max_rank) {
  const auto old_precision = out.precision(17);
  for (std::size_t rank = 0; rank < max_rank; ++rank) {
    const std::size_t size = rank < report.sizes.size() ? report.sizes[rank] : 0;
    const double fraction = vertex_count == 0 ? 0.0 : static_cast<double>(size) / static_cast<double>(vertex_count);
    out << n << ',' << d << ',' << radius_label << ',' << trial << ',' << rank + 1 << ',' << size << ',' << fraction << '\n';
  }
  out.precision(old_precision);
}

}  // namespace critprm
