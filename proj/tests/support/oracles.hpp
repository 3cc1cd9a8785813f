#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "critprm/planners.hpp"
#include "critprm/rgg.hpp"
#include "critprm/union_find.hpp"

namespace oracles {

using EdgeKeys = std::set<std::pair<std::uint32_t, std::uint32_t>>;

/// All pairs i < j with ||p_i - p_j|| <= r.
inline EdgeKeys brute_force_edges(const critprm::PointSet& pts, double r) {
  EdgeKeys out;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < pts.dim(); ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      if (std::sqrt(s) <= r) out.insert({i, j});
    }
  }
  return out;
}

inline EdgeKeys edge_keys(const critprm::GeometricGraph& g) {
  EdgeKeys out;
  for (const auto& e : g.edges()) out.insert({e.u, e.v});
  return out;
}

namespace detail {

// The chord to the target bounds every completion from below, so pruning
// never discards an optimum.
inline void enumerate(const critprm::GeometricGraph& g, std::uint32_t u, std::uint32_t target, double len,
                      std::vector<char>& on_path, double& best) {
  if (len + critprm::euclidean_distance(g.point(u), g.point(target)) * (1 - 1e-12) >= best) return;
  if (u == target) {
    best = len;
    return;
  }
  for (const auto& nb : g.neighbors(u)) {
    if (on_path[nb.vertex]) continue;
    on_path[nb.vertex] = 1;
    enumerate(g, nb.vertex, target, len + nb.length, on_path, best);
    on_path[nb.vertex] = 0;
  }
}

}  // namespace detail

/// Shortest simple-path length by branch-and-bound enumeration; infinity
/// when unreachable.
inline double enumeration_optimum(const critprm::GeometricGraph& g, std::uint32_t s, std::uint32_t t) {
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[s] = 1;
  double best = std::numeric_limits<double>::infinity();
  detail::enumerate(g, s, t, 0.0, on_path, best);
  return best;
}

/// Minimax value: the smallest c at which s and t are joined by edges of
/// cost <= c, raised to the source cost.
inline double threshold_minimax(const critprm::PrmGraph& g, const critprm::ScalarField& field, double resolution,
                                double source_cost) {
  struct Weighted {
    double cost;
    std::uint32_t u, v;
  };
  std::vector<Weighted> all;
  const auto& pts = g.graph.vertices();
  for (const auto& e : g.graph.edges())
    all.push_back({critprm::segment_bottleneck(pts[e.u], pts[e.v], field, resolution), e.u, e.v});
  std::sort(all.begin(), all.end(), [](const Weighted& a, const Weighted& b) { return a.cost < b.cost; });
  critprm::DisjointSets sets(g.graph.vertex_count());
  for (const auto& w : all) {
    sets.unite(w.u, w.v);
    if (sets.find(g.start_index) == sets.find(g.target_index)) return std::max(source_cost, w.cost);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace oracles
