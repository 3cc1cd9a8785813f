#include "critprm/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critprm {

UniformGrid::UniformGrid(const PointSet& points, double min_cell_side) : dim_(points.dim()), side_(min_cell_side) {
  if (!(min_cell_side > 0.0) || !std::isfinite(min_cell_side)) throw std::invalid_argument("cell side must be positive and finite");
  const std::size_t n = points.size();
  std::vector<double> lo(dim_, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim_, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = points[k];
    for (std::size_t i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  if (n == 0) return;

  // Keep the key space below 2^62 by coarsening the cells if needed; any
  // side >= the query radius is correct.
  const double max_axis_cells = std::floor(std::pow(2.0, 62.0 / static_cast<double>(dim_)));
  for (std::size_t i = 0; i < dim_; ++i) {
    const double extent = hi[i] - lo[i];
    if (max_axis_cells > 1.0 && extent / side_ > max_axis_cells - 1.0) side_ = extent / (max_axis_cells - 1.0);
  }

  axis_cells_.resize(dim_);
  stride_.resize(dim_);
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    axis_cells_[i] = static_cast<std::int64_t>(std::floor((hi[i] - lo[i]) / side_)) + 1;
    stride_[i] = stride;
    stride *= static_cast<std::uint64_t>(axis_cells_[i]);
  }

  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
  std::vector<std::int64_t> point_coords(n * dim_);
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = points[k];
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      auto c = static_cast<std::int64_t>(std::floor((p[i] - lo[i]) / side_));
      c = std::clamp<std::int64_t>(c, 0, axis_cells_[i] - 1);
      point_coords[k * dim_ + i] = c;
      key += static_cast<std::uint64_t>(c) * stride_[i];
    }
    keyed[k] = {key, static_cast<std::uint32_t>(k)};
  }
  std::sort(keyed.begin(), keyed.end());

  order_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    order_[k] = keyed[k].second;
    if (k == 0 || keyed[k].first != keyed[k - 1].first) {
      cells_.push_back({keyed[k].first, k, k});
      const std::size_t first = keyed[k].second;
      coords_.insert(coords_.end(), point_coords.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                     point_coords.begin() + static_cast<std::ptrdiff_t>((first + 1) * dim_));
    }
    cells_.back().end = k + 1;
  }

  const double stencil = std::pow(3.0, static_cast<double>(dim_));
  use_stencil_ = stencil < static_cast<double>(cells_.size());
}

bool UniformGrid::adjacent(std::size_t a, std::size_t b) const {
  const std::int64_t* ca = &coords_[a * dim_];
  const std::int64_t* cb = &coords_[b * dim_];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::int64_t diff = ca[i] - cb[i];
    if (diff > 1 || diff < -1) return false;
  }
  return true;
}

std::size_t UniformGrid::find_cell(std::uint64_t key) const {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), key,
                                   [](const Cell& c, std::uint64_t k) { return c.key < k; });
  if (it == cells_.end() || it->key != key) return npos;
  return static_cast<std::size_t>(it - cells_.begin());
}

}  // namespace critprm
