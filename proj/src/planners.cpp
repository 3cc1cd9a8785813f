#include "critprm/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "critprm/constants.hpp"
#include "critprm/sampling.hpp"
#include "critprm/spatial_grid.hpp"

namespace critprm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_free_endpoints(const Scenario& scn) {
  if (!scn.is_free(scn.start())) throw EndpointInCollision("start " + to_string(scn.start()) + " is not free");
  if (!scn.is_free(scn.target())) throw EndpointInCollision("target " + to_string(scn.target()) + " is not free");
}

struct FreeSample {
  PointSet points;
  std::size_t drawn = 0;
};

FreeSample free_samples(const Scenario& scn, double n, std::uint64_t seed) {
  require_positive(n, "n");
  auto sample = sample_ppp(n, scn.domain(), seed);
  FreeSample out{PointSet(scn.dim()), sample.points.size()};
  out.points.reserve(sample.points.size());
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    if (scn.is_free(sample.points[i])) out.points.push_back(sample.points[i]);
  }
  return out;
}

// Edges from s (index m) and t (index m + 1) to the first m points of
// `points` and between s and t, within r_st.
void append_endpoint_edges(const Scenario& scn, const PointSet& points, std::size_t m, double r_st, bool check_free,
                           std::vector<Edge>& edges) {
  const auto s = static_cast<std::uint32_t>(m);
  const auto t = static_cast<std::uint32_t>(m + 1);
  for (const auto endpoint : {s, t}) {
    const auto p = points[endpoint];
    for (std::uint32_t i = 0; i < m; ++i) {
      const double len = euclidean_distance(p, points[i]);
      if (len <= r_st && (!check_free || scn.segment_free(p, points[i]))) edges.push_back({i, endpoint, len});
    }
  }
  const double st = euclidean_distance(points[s], points[t]);
  if (st <= r_st && st > 0.0 && (!check_free || scn.segment_free(points[s], points[t]))) edges.push_back({s, t, st});
}

PlanResult result_from_vertices(const PrmGraph& g, const std::vector<std::uint32_t>& vertices, double length) {
  PlanResult result;
  std::vector<Point> waypoints;
  for (const auto v : vertices) waypoints.push_back(g.graph.vertices().point(v));
  result.path = Path(std::move(waypoints));
  result.cost = length;
  return result;
}

void fill_stats(PlanResult& result, const PrmGraph& g) {
  result.stats.vertex_count = g.graph.vertex_count();
  result.stats.edge_count = g.graph.edge_count();
  result.stats.samples_drawn = g.samples_drawn;
}

std::size_t nearest_node(const PointSet& nodes, PointView x) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d2 = distance_squared_unchecked(nodes[i], x);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

// Steered point at most eta from `from` toward `to`; nullopt when they coincide.
std::optional<Point> steer(PointView from, PointView to, double eta) {
  const double dist = euclidean_distance(from, to);
  if (dist == 0.0) return std::nullopt;
  if (dist <= eta) return Point(to);
  std::vector<double> coords(from.size());
  const double scale = eta / dist;
  for (std::size_t i = 0; i < from.size(); ++i) coords[i] = from[i] + scale * (to[i] - from[i]);
  return Point(std::move(coords));
}

PlanResult goal_path(const Scenario& scn, const GeometricGraph& g, const Box& goal) {
  PlanResult result;
  const auto found =
      shortest_path_to_any(g, 0, [&](std::uint32_t v) { return goal.contains(g.point(v)); });
  if (!found) return result;
  std::vector<Point> waypoints;
  for (const auto v : found->vertices) waypoints.push_back(g.vertices().point(v));
  if (waypoints.back() != scn.target() && scn.segment_free(waypoints.back(), scn.target()))
    waypoints.push_back(scn.target());
  if (waypoints.size() == 1) waypoints.push_back(waypoints.front());
  result.path = Path(std::move(waypoints));
  result.cost = path_length(*result.path);
  return result;
}

double log_radius_term(std::size_t d, double n) {
  if (!(n > 1.0)) throw std::invalid_argument("radius presets need n > 1");
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  return std::pow(std::log(n) / n, 1.0 / static_cast<double>(d));
}

}  // namespace

double gamma_radius(std::size_t d, double n, double gamma) {
  require_positive(n, "n");
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  return gamma * std::pow(n, -1.0 / static_cast<double>(d));
}

double r_prm_star(std::size_t d, double n) { return kPrmStarConstant * log_radius_term(d, n); }

double r_fmt_star(std::size_t d, double n, double free_volume) {
  require_positive(free_volume, "free volume");
  const double inv_d = 1.0 / static_cast<double>(d);
  const double b_d = unit_ball_volume(static_cast<int>(d));
  return kFmtStarMultiplier * 2.0 * std::pow(inv_d, inv_d) * std::pow(free_volume / b_d, inv_d) *
         log_radius_term(d, n);
}

PrmGraph connect_endpoints(const Scenario& scn, PointSet free_points, std::vector<Edge> edges, double r_n,
                           double r_st) {
  require_positive(r_st, "r_st");
  require_free_endpoints(scn);
  const std::size_t m = free_points.size();
  free_points.push_back(scn.start());
  free_points.push_back(scn.target());
  append_endpoint_edges(scn, free_points, m, r_st, true, edges);
  PrmGraph g;
  g.graph = GeometricGraph(std::move(free_points), r_n, edges);
  g.start_index = static_cast<std::uint32_t>(m);
  g.target_index = static_cast<std::uint32_t>(m + 1);
  g.r_n = r_n;
  g.r_st = r_st;
  return g;
}

PrmGraph prm_build(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed) {
  require_positive(r_n, "r_n");
  require_positive(r_st, "r_st");
  require_free_endpoints(scn);
  auto sample = free_samples(scn, n, seed);
  std::vector<Edge> edges;
  const bool has_obstacles = !scn.obstacles().empty();
  for_each_pair_within(sample.points, r_n, [&](std::uint32_t i, std::uint32_t j, double len) {
    if (!has_obstacles || scn.segment_free(sample.points[i], sample.points[j])) edges.push_back({i, j, len});
  });
  auto g = connect_endpoints(scn, std::move(sample.points), std::move(edges), r_n, r_st);
  g.n = n;
  g.seed = seed;
  g.samples_drawn = sample.drawn;
  return g;
}

PlanResult prm_query(const PrmGraph& g) {
  const auto start = Clock::now();
  const auto found = shortest_path(g.graph, g.start_index, g.target_index);
  PlanResult result = found ? result_from_vertices(g, found->vertices, found->length) : PlanResult{};
  fill_stats(result, g);
  result.stats.wall_time_ms = elapsed_ms(start);
  return result;
}

PlanResult prm_bottleneck_query(const PrmGraph& g, const CostMap& m, std::optional<double> resolution) {
  const auto start = Clock::now();
  const double step = resolution.value_or(g.r_n / 10.0);
  require_positive(step, "resolution");
  const auto field = m.field();
  const auto& pts = g.graph.vertices();
  const auto found = minimax_path(
      g.graph, g.start_index, g.target_index,
      [&](std::uint32_t u, std::uint32_t v) { return segment_bottleneck(pts[u], pts[v], field, step); },
      m(pts[g.start_index]));
  PlanResult result = found ? result_from_vertices(g, found->vertices, found->length) : PlanResult{};
  if (found) result.bottleneck_cost = found->bottleneck;
  fill_stats(result, g);
  result.stats.wall_time_ms = elapsed_ms(start);
  return result;
}

PlanResult plan_prm(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed) {
  const auto start = Clock::now();
  const auto g = prm_build(scn, n, r_n, r_st, seed);
  auto result = prm_query(g);
  result.stats.wall_time_ms = elapsed_ms(start);
  return result;
}

PlanResult fmt_star(const Scenario& scn, double n, double r_n, double r_st, std::uint64_t seed) {
  const auto start = Clock::now();
  require_positive(r_n, "r_n");
  require_positive(r_st, "r_st");
  require_free_endpoints(scn);
  auto sample = free_samples(scn, n, seed);
  const std::size_t m = sample.points.size();
  std::vector<Edge> near;
  for_each_pair_within(sample.points, r_n, [&](std::uint32_t i, std::uint32_t j, double len) {
    near.push_back({i, j, len});
  });
  PointSet points = std::move(sample.points);
  points.push_back(scn.start());
  points.push_back(scn.target());
  append_endpoint_edges(scn, points, m, r_st, false, near);
  const GeometricGraph nbrs(std::move(points), r_n, near);
  const auto s = static_cast<std::uint32_t>(m);
  const auto t = static_cast<std::uint32_t>(m + 1);

  PlanResult result;
  result.stats.vertex_count = nbrs.vertex_count();
  result.stats.samples_drawn = sample.drawn;
  auto finish = [&]() {
    result.stats.wall_time_ms = elapsed_ms(start);
    return result;
  };
  if (nbrs.neighbors(s).empty()) return finish();

  enum : char { Unvisited, Open, Closed };
  const std::size_t count = nbrs.vertex_count();
  std::vector<char> state(count, Unvisited);
  std::vector<double> cost(count, std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> parent(count, kNoParent);
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  cost[s] = 0.0;
  state[s] = Open;
  open.emplace(0.0, s);
  std::vector<std::uint32_t> opened;
  std::size_t tree_edges = 0;
  while (!open.empty()) {
    const auto z = open.top().second;
    open.pop();
    if (z == t) break;
    opened.clear();
    for (const auto& xn : nbrs.neighbors(z)) {
      const auto x = xn.vertex;
      if (state[x] != Unvisited) continue;
      std::uint32_t best = kNoParent;
      double best_cost = std::numeric_limits<double>::infinity();
      for (const auto& yn : nbrs.neighbors(x)) {
        if (state[yn.vertex] != Open) continue;
        const double c = cost[yn.vertex] + yn.length;
        if (c < best_cost) {
          best_cost = c;
          best = yn.vertex;
        }
      }
      if (best != kNoParent && scn.segment_free(nbrs.point(best), nbrs.point(x))) {
        cost[x] = best_cost;
        parent[x] = best;
        opened.push_back(x);
      }
    }
    for (const auto x : opened) {
      state[x] = Open;
      open.emplace(cost[x], x);
      ++tree_edges;
    }
    state[z] = Closed;
  }
  result.stats.edge_count = tree_edges;
  if (parent[t] == kNoParent) return finish();
  std::vector<Point> waypoints;
  for (auto v = t; v != kNoParent; v = parent[v]) waypoints.push_back(nbrs.vertices().point(v));
  std::reverse(waypoints.begin(), waypoints.end());
  result.path = Path(std::move(waypoints));
  result.cost = cost[t];
  return finish();
}

PlanResult btt(const Scenario& scn, double n, double r_n, double r_st, const CostMap& m, std::uint64_t seed) {
  const auto start = Clock::now();
  const auto g = prm_build(scn, n, r_n, r_st, seed);
  auto result = prm_bottleneck_query(g, m);
  result.stats.wall_time_ms = elapsed_ms(start);
  return result;
}

std::vector<Edge> RrtTree::edges() const {
  std::vector<Edge> out;
  for (std::uint32_t v = 1; v < parent.size(); ++v) {
    out.push_back({std::min(parent[v], v), std::max(parent[v], v), euclidean_distance(nodes[parent[v]], nodes[v])});
  }
  return out;
}

RrtTree rrt_build(const Scenario& scn, const Point& s, const Box& goal, std::size_t iterations, double eta,
                  std::uint64_t seed) {
  require_positive(eta, "eta");
  if (!scn.is_free(s)) throw EndpointInCollision("root " + to_string(s) + " is not free");
  RrtTree tree;
  tree.nodes = PointSet(scn.dim());
  tree.nodes.push_back(s);
  tree.parent.push_back(kNoParent);
  tree.reached = goal.contains(s);
  IncrementalStream stream(scn.dim(), seed);
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto batch = stream.next();
    if (batch.empty()) ++tree.empty_iterations;
    tree.samples_drawn += batch.size();
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const auto near = nearest_node(tree.nodes, batch[k]);
      const auto x_new = steer(tree.nodes[near], batch[k], eta);
      if (!x_new || !scn.segment_free(tree.nodes[near], *x_new)) continue;
      tree.nodes.push_back(*x_new);
      tree.parent.push_back(static_cast<std::uint32_t>(near));
      if (goal.contains(*x_new)) tree.reached = true;
    }
  }
  tree.iterations = iterations;
  return tree;
}

GeometricGraph RrgRoadmap::graph() const {
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  double longest = 0.0;
  for (const auto& e : edges) {
    plain.push_back({e.u, e.v, e.length});
    longest = std::max(longest, e.length);
  }
  return GeometricGraph(nodes, longest, plain);
}

RrgRoadmap rrg_build(const Scenario& scn, const Point& s, const Box& goal, std::size_t iterations, double eta,
                     double mu, const RadiusSchedule1D& r_base, const RadiusSchedule1D& r_st, std::uint64_t seed) {
  require_positive(eta, "eta");
  require_positive(mu, "mu");
  if (!scn.is_free(s)) throw EndpointInCollision("root " + to_string(s) + " is not free");
  RrgRoadmap map;
  map.nodes = PointSet(scn.dim());
  map.nodes.push_back(s);
  map.parent.push_back(kNoParent);
  map.goal = goal;
  map.eta = eta;
  map.mu = mu;
  map.reached = goal.contains(s);
  IncrementalStream stream(scn.dim(), seed);
  for (std::size_t it = 0; it < iterations; ++it) {
    const std::size_t count = map.nodes.size();
    const double r = std::min((1.0 + mu) * r_base(count), eta);
    const double r_s = std::min((1.0 + mu) * r_st(count), eta);
    const auto batch = stream.next();
    map.samples_drawn += batch.size();
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const auto near = nearest_node(map.nodes, batch[k]);
      const auto x_new = steer(map.nodes[near], batch[k], eta);
      if (!x_new || !scn.segment_free(map.nodes[near], *x_new)) continue;
      const auto v = static_cast<std::uint32_t>(map.nodes.size());
      map.edges.push_back({static_cast<std::uint32_t>(near), v, euclidean_distance(map.nodes[near], *x_new), eta});
      for (std::uint32_t u = 0; u < v; ++u) {
        if (u == near) continue;
        const double len = euclidean_distance(map.nodes[u], *x_new);
        const double bound = (u == 0) ? std::max(r, r_s) : r;
        if (len <= bound && scn.segment_free(map.nodes[u], *x_new)) map.edges.push_back({u, v, len, bound});
      }
      map.nodes.push_back(*x_new);
      map.parent.push_back(static_cast<std::uint32_t>(near));
      if (goal.contains(*x_new)) map.reached = true;
    }
  }
  map.iterations = iterations;
  return map;
}

RadiusSchedule1D default_rrg_base_radius(std::size_t d) {
  return [d](std::size_t nodes) { return gamma_radius(d, static_cast<double>(std::max<std::size_t>(nodes, 2)), 1.0); };
}

RadiusSchedule1D default_rrg_st_radius(std::size_t d) {
  return [d](std::size_t nodes) { return r_prm_star(d, static_cast<double>(std::max<std::size_t>(nodes, 2))); };
}

Box goal_region(const Scenario& scn, double side) {
  require_positive(side, "goal side");
  std::vector<double> lo(scn.dim()), hi(scn.dim());
  for (std::size_t i = 0; i < scn.dim(); ++i) {
    lo[i] = std::max(0.0, scn.target()[i] - side / 2.0);
    hi[i] = std::min(1.0, scn.target()[i] + side / 2.0);
  }
  return Box(Point(std::move(lo)), Point(std::move(hi)));
}

PlanResult rrt_query(const Scenario& scn, const RrtTree& tree, const Box& goal) {
  const auto edges = tree.edges();
  const GeometricGraph g(tree.nodes, 0.0, edges);
  auto result = goal_path(scn, g, goal);
  result.stats.vertex_count = g.vertex_count();
  result.stats.edge_count = g.edge_count();
  result.stats.samples_drawn = tree.samples_drawn;
  return result;
}

PlanResult rrg_query(const Scenario& scn, const RrgRoadmap& roadmap) {
  const auto g = roadmap.graph();
  auto result = goal_path(scn, g, roadmap.goal);
  result.stats.vertex_count = g.vertex_count();
  result.stats.edge_count = g.edge_count();
  result.stats.samples_drawn = roadmap.samples_drawn;
  return result;
}

bool path_free(const Scenario& scn, const Path& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!scn.segment_free(path[i], path[i + 1])) return false;
  }
  return true;
}

Path simplify_path(const Scenario& scn, const Path& path, std::uint64_t seed) {
  if (path.dim() != scn.dim()) throw DimensionMismatch(scn.dim(), path.dim());
  if (!path_free(scn, path)) throw std::invalid_argument("input path is in collision");
  std::vector<Point> w;
  for (const auto& p : path.waypoints()) {
    if (w.empty() || w.back() != p) w.push_back(p);
  }
  if (w.size() == 1) w.push_back(w.front());
  auto length_of = [](const std::vector<Point>& pts) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += euclidean_distance(pts[i], pts[i + 1]);
    return total;
  };
  auto point_at = [&](std::size_t seg, double offset) {
    const double len = euclidean_distance(w[seg], w[seg + 1]);
    const double f = len > 0.0 ? std::clamp(offset / len, 0.0, 1.0) : 0.0;
    std::vector<double> c(scn.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = w[seg][i] + f * (w[seg + 1][i] - w[seg][i]);
    return Point(std::move(c));
  };

  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kShortcutAttempts && w.size() > 2; ++attempt) {
    std::vector<double> cumulative(w.size(), 0.0);
    for (std::size_t i = 1; i < w.size(); ++i) cumulative[i] = cumulative[i - 1] + euclidean_distance(w[i - 1], w[i]);
    double a = rng.uniform() * cumulative.back();
    double b = rng.uniform() * cumulative.back();
    if (a > b) std::swap(a, b);
    auto segment_of = [&](double s) {
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
      return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()) - 1, w.size() - 2);
    };
    const auto ia = segment_of(a);
    const auto ib = segment_of(b);
    if (ia == ib) continue;
    const auto pa = point_at(ia, a - cumulative[ia]);
    const auto pb = point_at(ib, b - cumulative[ib]);
    if (!scn.segment_free(pa, pb)) continue;
    std::vector<Point> candidate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(ia) + 1);
    for (const auto& p : {pa, pb}) {
      if (candidate.back() != p) candidate.push_back(p);
    }
    for (std::size_t i = ib + 1; i < w.size(); ++i) {
      if (candidate.back() != w[i]) candidate.push_back(w[i]);
    }
    if (candidate.size() >= 2 && length_of(candidate) <= length_of(w)) w = std::move(candidate);
  }

  std::vector<Point> pruned{w.front()};
  for (std::size_t i = 0; i + 1 < w.size();) {
    std::size_t j = w.size() - 1;
    while (j > i + 1 && !scn.segment_free(w[i], w[j])) --j;
    pruned.push_back(w[j]);
    i = j;
  }
  if (length_of(pruned) <= length_of(w)) w = std::move(pruned);
  return Path(std::move(w));
}

}  // namespace critprm
