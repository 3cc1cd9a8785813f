#include "critprm/sampling.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace critprm {

namespace {

// Inversion by sequential search; exact for mean <= kPoissonChunkMean, where
// exp(-mean) is far from underflow.
std::uint64_t poisson_small(double mean, Rng& rng) {
  const double u = rng.uniform();
  double prob = std::exp(-mean);
  double cdf = prob;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    prob *= mean / static_cast<double>(k);
    const double next = cdf + prob;
    if (next == cdf) break;  // tail mass below double resolution
    cdf = next;
  }
  return k;
}

}  // namespace

std::uint64_t poisson_draw(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("poisson mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > kPoissonChunkMean) {
    total += poisson_small(kPoissonChunkMean, rng);
    remaining -= kPoissonChunkMean;
  }
  if (remaining > 0.0) total += poisson_small(remaining, rng);
  return total;
}

std::string to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::PoissonBatch: return "poisson-batch";
    case SamplingMode::PoissonIncremental: return "poisson-incremental";
    case SamplingMode::Binomial: return "binomial";
  }
  return "unknown";
}

PointSet uniform_points(std::size_t count, const Box& domain, Rng& rng) {
  const std::size_t d = domain.dim();
  std::vector<double> data(count * d);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const double lo = domain.min_corner()[i];
      const double hi = domain.max_corner()[i];
      data[k * d + i] = lo + (hi - lo) * rng.uniform();
    }
  }
  return PointSet(d, std::move(data));
}

PointProcessSample sample_ppp(double density, const Box& domain, std::uint64_t seed) {
  if (!(density > 0.0)) throw std::invalid_argument("density must be positive");
  const double volume = domain.volume();
  if (!(volume > 0.0)) throw std::invalid_argument("sampling domain has zero volume");
  Rng rng(seed);
  const auto count = poisson_draw(density * volume, rng);
  return {uniform_points(count, domain, rng), density, SamplingMode::PoissonBatch, seed};
}

PointProcessSample sample_binomial(std::size_t n, const Box& domain, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("binomial process needs n >= 1");
  Rng rng(seed);
  const double volume = domain.volume();
  return {uniform_points(n, domain, rng), volume > 0.0 ? static_cast<double>(n) / volume : 0.0,
          SamplingMode::Binomial, seed};
}

IncrementalStream::IncrementalStream(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed), rng_(seed) {
  if (dim == 0) throw std::invalid_argument("stream dimension must be positive");
}

PointSet IncrementalStream::next() {
  ++iteration_;
  const auto count = poisson_draw(1.0, rng_);
  return uniform_points(count, Box::unit(dim_), rng_);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  for (std::size_t i = 0; i < points.dim(); ++i) out << (i ? "," : "") << 'x' << i;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto p = points[k];
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace critprm
