#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "critprm/planners.hpp"
#include "critprm/rgg.hpp"
#include "critprm/scenario.hpp"

namespace critprm {

/// Upper bound on lattice sites materialized in the cube.
inline constexpr std::uint64_t kMaxLatticeSites = 50'000'000;

/// Site-percolated lattice spacing * Z^d restricted to [0,1]^d.
struct LatticeGraph {
  std::size_t d = 0;
  double n = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  /// n^(-1/d)
  double spacing = 0.0;
  /// Sites per axis: k * spacing <= 1 for k = 0..sites_per_axis-1.
  std::uint64_t sites_per_axis = 0;
  std::uint64_t site_count = 0;
  /// Linear (mixed-radix, axis 0 fastest) index of every retained site,
  /// ascending; vertex i of `graph` is retained[i].
  std::vector<std::uint64_t> retained;
  /// Retained sites joined to their retained axis neighbors, edge length = spacing.
  GeometricGraph graph;
};

/// Uniform in [0,1) attached to lattice site `index`; a site is retained at
/// probability p iff its uniform is below p, so retained sets are nested in p.
double site_uniform(std::uint64_t seed, std::uint64_t index);

LatticeGraph build_lattice_graph(double n, std::size_t d, double p, std::uint64_t seed);

/// Largest and second-largest cluster as fractions of the retained sites.
struct LatticeClusterFractions {
  double largest = 0.0;
  double second = 0.0;
  std::size_t retained = 0;
};
LatticeClusterFractions lattice_cluster_fractions(const LatticeGraph& g);

/// Retained lattice sites in free space joined along free axis-neighbor
/// segments, plus the start/target connections within r_st. r_n = spacing.
PrmGraph sparsified_prm(const Scenario& scn, double n, double p, double r_st, std::uint64_t seed);

struct DecayPoint {
  int k = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
};

struct DecayReport {
  std::vector<DecayPoint> points;
  std::size_t trials = 0;
  /// Least-squares fit of log(frequency) against k over points with hits > 0.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Monte-Carlo estimate of Pr[A_k] on the infinite lattice Z^d: the
/// probability that the origin is retained and its cluster contains a site at
/// L1 distance >= k. Each trial uses an independent retention field.
DecayReport subcritical_reach_decay(std::size_t d, double p, std::span<const int> k_list, std::size_t trials,
                                    std::uint64_t seed);

}  // namespace critprm
