#include "critprm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <unordered_set>

#include "critprm/rng.hpp"

namespace critprm {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("retention probability must lie in [0,1]");
}

std::uint64_t hash_coords(std::uint64_t seed, const std::vector<std::int64_t>& coords) {
  std::uint64_t h = mix64(seed);
  for (const auto c : coords) h = mix64(h ^ static_cast<std::uint64_t>(c));
  return h;
}

struct CoordHash {
  std::size_t operator()(const std::vector<std::int64_t>& c) const { return hash_coords(0, c); }
};

}  // namespace

double site_uniform(std::uint64_t seed, std::uint64_t index) { return to_unit_interval(derive_seed(seed, index)); }

LatticeGraph build_lattice_graph(double n, std::size_t d, double p, std::uint64_t seed) {
  if (!(n >= 1.0)) throw std::invalid_argument("n must be at least 1");
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  check_probability(p);
  LatticeGraph g;
  g.d = d;
  g.n = n;
  g.p = p;
  g.seed = seed;
  g.spacing = std::pow(n, -1.0 / static_cast<double>(d));
  g.sites_per_axis = static_cast<std::uint64_t>(std::floor(1.0 / g.spacing + 1e-9)) + 1;
  g.site_count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (g.site_count > kMaxLatticeSites / g.sites_per_axis) throw std::length_error("lattice too large");
    g.site_count *= g.sites_per_axis;
  }

  std::vector<char> kept(g.site_count, 0);
  for (std::uint64_t idx = 0; idx < g.site_count; ++idx) {
    if (site_uniform(seed, idx) < p) {
      kept[idx] = 1;
      g.retained.push_back(idx);
    }
  }
  PointSet points(d);
  points.reserve(g.retained.size());
  std::vector<double> coords(d);
  for (const auto idx : g.retained) {
    auto rest = idx;
    for (std::size_t i = 0; i < d; ++i) {
      coords[i] = static_cast<double>(rest % g.sites_per_axis) * g.spacing;
      rest /= g.sites_per_axis;
    }
    points.push_back(coords);
  }
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v < g.retained.size(); ++v) {
    const auto idx = g.retained[v];
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < d; ++i) {
      const auto coord = (idx / stride) % g.sites_per_axis;
      if (coord + 1 < g.sites_per_axis && kept[idx + stride]) {
        const auto it = std::lower_bound(g.retained.begin(), g.retained.end(), idx + stride);
        edges.push_back({v, static_cast<std::uint32_t>(it - g.retained.begin()), g.spacing});
      }
      stride *= g.sites_per_axis;
    }
  }
  g.graph = GeometricGraph(std::move(points), g.spacing, edges);
  return g;
}

LatticeClusterFractions lattice_cluster_fractions(const LatticeGraph& g) {
  LatticeClusterFractions out;
  out.retained = g.retained.size();
  if (out.retained == 0) return out;
  const auto report = connected_components(g.graph);
  out.largest = static_cast<double>(report.largest_size()) / static_cast<double>(out.retained);
  out.second = static_cast<double>(report.second_size()) / static_cast<double>(out.retained);
  return out;
}

PrmGraph sparsified_prm(const Scenario& scn, double n, double p, double r_st, std::uint64_t seed) {
  const auto lattice = build_lattice_graph(n, scn.dim(), p, seed);
  const auto& all = lattice.graph.vertices();
  std::vector<std::uint32_t> new_index(all.size(), kNoParent);
  PointSet free_points(scn.dim());
  for (std::uint32_t v = 0; v < all.size(); ++v) {
    if (scn.is_free(all[v])) {
      new_index[v] = static_cast<std::uint32_t>(free_points.size());
      free_points.push_back(all[v]);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : lattice.graph.edges()) {
    const auto a = new_index[e.u];
    const auto b = new_index[e.v];
    if (a != kNoParent && b != kNoParent && scn.segment_free(all[e.u], all[e.v])) edges.push_back({a, b, e.length});
  }
  const auto drawn = all.size();
  auto g = connect_endpoints(scn, std::move(free_points), std::move(edges), lattice.spacing, r_st);
  g.n = n;
  g.seed = seed;
  g.samples_drawn = drawn;
  return g;
}

DecayReport subcritical_reach_decay(std::size_t d, double p, std::span<const int> k_list, std::size_t trials,
                                    std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  check_probability(p);
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  for (const int k : k_list) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
  }
  const int k_max = k_list.empty() ? 0 : *std::max_element(k_list.begin(), k_list.end());
  DecayReport report;
  report.trials = trials;
  std::vector<std::size_t> reach_hits(static_cast<std::size_t>(k_max) + 1, 0);

  std::unordered_set<std::vector<std::int64_t>, CoordHash> seen;
  std::deque<std::vector<std::int64_t>> frontier;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto field_seed = derive_seed(seed, trial);
    auto retained = [&](const std::vector<std::int64_t>& c) {
      return to_unit_interval(hash_coords(field_seed, c)) < p;
    };
    const std::vector<std::int64_t> origin(d, 0);
    if (!retained(origin)) continue;
    seen.clear();
    frontier.clear();
    seen.insert(origin);
    frontier.push_back(origin);
    std::int64_t reach = 0;
    while (!frontier.empty() && reach < k_max) {
      auto site = std::move(frontier.front());
      frontier.pop_front();
      for (std::size_t i = 0; i < d && reach < k_max; ++i) {
        for (const int step : {-1, 1}) {
          auto next = site;
          next[i] += step;
          if (seen.count(next) || !retained(next)) continue;
          std::int64_t l1 = 0;
          for (const auto c : next) l1 += std::llabs(c);
          reach = std::max(reach, l1);
          seen.insert(next);
          frontier.push_back(std::move(next));
        }
      }
    }
    for (std::int64_t k = 0; k <= std::min<std::int64_t>(reach, k_max); ++k) ++reach_hits[static_cast<std::size_t>(k)];
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t used = 0;
  for (const int k : k_list) {
    DecayPoint point;
    point.k = k;
    point.hits = reach_hits[static_cast<std::size_t>(k)];
    point.frequency = static_cast<double>(point.hits) / static_cast<double>(trials);
    report.points.push_back(point);
    if (point.hits == 0) continue;
    const double x = k;
    const double y = std::log(point.frequency);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++used;
  }
  if (used >= 2) {
    const double m = static_cast<double>(used);
    const double sxx_c = sxx - sx * sx / m;
    const double sxy_c = sxy - sx * sy / m;
    const double syy_c = syy - sy * sy / m;
    report.slope = sxy_c / sxx_c;
    report.intercept = (sy - report.slope * sx) / m;
    report.r_squared = syy_c > 0.0 ? (sxy_c * sxy_c) / (sxx_c * syy_c) : 1.0;
  }
  return report;
}

}  // namespace critprm
