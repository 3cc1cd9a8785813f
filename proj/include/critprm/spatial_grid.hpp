#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "critprm/geometry.hpp"

namespace critprm {

/// Uniform hash grid over a point set with cell side >= the query radius.
///
/// Only occupied cells are stored, sorted by their mixed-radix key. Pairs of
/// neighboring cells (Chebyshev distance <= 1 in cell coordinates) are found
/// either through the 3^d stencil or, when 3^d exceeds the number of occupied
/// cells (high d, few cells per axis), by scanning all occupied cell pairs.
class UniformGrid {
 public:
  UniformGrid(const PointSet& points, double min_cell_side);

  std::size_t cell_count() const { return cells_.size(); }
  double cell_side() const { return side_; }
  bool uses_stencil() const { return use_stencil_; }
  std::span<const std::uint32_t> members(std::size_t cell) const {
    return {order_.data() + cells_[cell].begin, cells_[cell].end - cells_[cell].begin};
  }

  /// Calls fn(a, b) once for every unordered pair of neighboring occupied
  /// cells with a < b, and fn(a, a) for every occupied cell.
  template <class Fn>
  void for_each_cell_pair(Fn&& fn) const {
    for (std::size_t a = 0; a < cells_.size(); ++a) {
      fn(a, a);
      if (use_stencil_) {
        for_each_stencil_neighbor(a, fn);
      } else {
        for (std::size_t b = a + 1; b < cells_.size(); ++b) {
          if (adjacent(a, b)) fn(a, b);
        }
      }
    }
  }

 private:
  struct Cell {
    std::uint64_t key;
    std::size_t begin;
    std::size_t end;
  };

  template <class Fn>
  void for_each_stencil_neighbor(std::size_t a, Fn& fn) const {
    const std::int64_t* base = &coords_[a * dim_];
    std::vector<int> offset(dim_, -1);
    while (true) {
      std::uint64_t key = 0;
      bool inside = true;
      for (std::size_t i = 0; i < dim_; ++i) {
        const std::int64_t c = base[i] + offset[i];
        if (c < 0 || c >= axis_cells_[i]) {
          inside = false;
          break;
        }
        key += static_cast<std::uint64_t>(c) * stride_[i];
      }
      if (inside && key > cells_[a].key) {
        const std::size_t b = find_cell(key);
        if (b != npos) fn(a, b);
      }
      std::size_t i = 0;
      while (i < dim_ && offset[i] == 1) offset[i++] = -1;
      if (i == dim_) break;
      ++offset[i];
    }
  }

  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t find_cell(std::uint64_t key) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t dim_;
  double side_;
  bool use_stencil_ = true;
  std::vector<std::int64_t> axis_cells_;
  std::vector<std::uint64_t> stride_;
  std::vector<Cell> cells_;
  std::vector<std::int64_t> coords_;  // cell coordinates, dim_ per cell
  std::vector<std::uint32_t> order_;  // point indices grouped by cell
};

/// Calls fn(i, j, distance) for every pair i < j with ||p_i - p_j|| <= radius
/// (closed ball, no tolerance).
template <class Fn>
void for_each_pair_within(const PointSet& points, double radius, Fn&& fn) {
  if (points.size() < 2) return;
  const UniformGrid grid(points, radius);
  const double r2 = radius * radius;
  const std::size_t d = points.dim();
  const double* data = points.data().data();
  auto close = [&](std::uint32_t i, std::uint32_t j, double& dist2) {
    const double* a = data + static_cast<std::size_t>(i) * d;
    const double* b = data + static_cast<std::size_t>(j) * d;
    double sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = a[k] - b[k];
      sum += diff * diff;
      if (sum > r2) return false;
    }
    dist2 = sum;
    return true;
  };
  grid.for_each_cell_pair([&](std::size_t a, std::size_t b) {
    const auto ma = grid.members(a);
    if (a == b) {
      for (std::size_t x = 0; x < ma.size(); ++x) {
        for (std::size_t y = x + 1; y < ma.size(); ++y) {
          double dist2;
          if (close(ma[x], ma[y], dist2)) {
            const auto [i, j] = std::minmax(ma[x], ma[y]);
            fn(i, j, std::sqrt(dist2));
          }
        }
      }
      return;
    }
    const auto mb = grid.members(b);
    for (const auto u : ma) {
      for (const auto v : mb) {
        double dist2;
        if (close(u, v, dist2)) {
          const auto [i, j] = std::minmax(u, v);
          fn(i, j, std::sqrt(dist2));
        }
      }
    }
  });
}

}  // namespace critprm
