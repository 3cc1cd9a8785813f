#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "critprm/geometry.hpp"
#include "critprm/rng.hpp"

namespace critprm {

/// Means above this are drawn as a sum of smaller exact draws.
inline constexpr double kPoissonChunkMean = 30.0;

/// Exact Poisson(mean) variate by sequential-search inversion. Larger means
/// are split into chunks of at most kPoissonChunkMean and summed.
std::uint64_t poisson_draw(double mean, Rng& rng);

enum class SamplingMode { PoissonBatch, PoissonIncremental, Binomial };

std::string to_string(SamplingMode mode);

struct PointProcessSample {
  PointSet points;
  double density = 0.0;
  SamplingMode mode = SamplingMode::PoissonBatch;
  std::uint64_t seed = 0;
};

/// Poisson point process of the given density restricted to `domain`:
/// N ~ Poisson(density * |domain|) points i.i.d. uniform in the box.
PointProcessSample sample_ppp(double density, const Box& domain, std::uint64_t seed);

/// Exactly n i.i.d. uniform points in `domain`.
PointProcessSample sample_binomial(std::size_t n, const Box& domain, std::uint64_t seed);

/// `count` i.i.d. uniform points in `domain`, drawn from `rng`.
PointSet uniform_points(std::size_t count, const Box& domain, Rng& rng);

/// Incremental PPP over [0,1]^d: every call to next() yields Poisson(1)
/// fresh uniform points, so after n calls the union is a PPP of density n.
class IncrementalStream {
 public:
  IncrementalStream(std::size_t dim, std::uint64_t seed);

  PointSet next();

  std::size_t iteration() const { return iteration_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  Rng rng_;
  std::size_t iteration_ = 0;
};

/// CSV with header x0..x{d-1}, one row per point, 17 significant digits.
void write_points_csv(std::ostream& out, const PointSet& points);

}  // namespace critprm
