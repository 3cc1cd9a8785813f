#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace critprm {

/// Read-only view of the coordinates of a point.
using PointView = std::span<const double>;

/// Scalar function over configuration space (cost maps, test fields).
using ScalarField = std::function<double(PointView)>;

/// Absolute tolerance used by the box/segment predicates.
inline constexpr double kGeometryTolerance = 1e-9;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

/// A point of R^d with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  explicit Point(PointView coords);

  static Point filled(std::size_t dim, double value);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  PointView view() const { return coords_; }
  const std::vector<double>& coords() const { return coords_; }
  operator PointView() const { return coords_; }  // NOLINT(google-explicit-constructor)

  bool operator==(const Point& other) const = default;

 private:
  std::vector<double> coords_;
};

/// Axis-aligned closed box [min, max].
class Box {
 public:
  Box(Point min_corner, Point max_corner);

  static Box unit(std::size_t dim);
  /// Box centered at `center` with the given side length.
  static Box centered(const Point& center, double side);

  std::size_t dim() const { return min_.dim(); }
  const Point& min_corner() const { return min_; }
  const Point& max_corner() const { return max_; }
  double volume() const;
  /// Closed containment.
  bool contains(PointView x) const;
  /// Euclidean distance from x to the box (0 when inside).
  double distance(PointView x) const;

  bool operator==(const Box& other) const = default;

 private:
  Point min_;
  Point max_;
};

struct Segment {
  Point a;
  Point b;

  Segment(Point a_, Point b_);
};

/// Polyline path through at least two waypoints.
class Path {
 public:
  explicit Path(std::vector<Point> waypoints);

  std::size_t dim() const { return waypoints_.front().dim(); }
  std::size_t size() const { return waypoints_.size(); }
  const std::vector<Point>& waypoints() const { return waypoints_; }
  const Point& front() const { return waypoints_.front(); }
  const Point& back() const { return waypoints_.back(); }
  const Point& operator[](std::size_t i) const { return waypoints_[i]; }

  /// True when two consecutive waypoints coincide.
  bool has_consecutive_duplicates() const;

 private:
  std::vector<Point> waypoints_;
};

/// Flat storage for many points of a common dimension.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<double> data);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }
  PointView operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const { return Point((*this)[i]); }
  const std::vector<double>& data() const { return data_; }

  void reserve(std::size_t count) { data_.reserve(count * dim_); }
  void push_back(PointView p);
  void append(const PointSet& other);

  bool operator==(const PointSet& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

double euclidean_distance(PointView a, PointView b);

/// Squared distance without dimension checks; hot loops only.
inline double distance_squared_unchecked(PointView a, PointView b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double path_length(const Path& path);

/// Maximum of `field` over the waypoints and over points sampled along each
/// segment. Each segment is split into 2^m equal pieces, m the smallest value
/// giving pieces no longer than `resolution`, so halving the resolution only
/// ever adds sample points. Throws std::domain_error if the field is not
/// finite at a sampled point.
double path_bottleneck(const Path& path, const ScalarField& field, double resolution);

/// Bottleneck of the single segment a-b; same discretization as path_bottleneck.
double segment_bottleneck(PointView a, PointView b, const ScalarField& field, double resolution);

/// Closed segment vs closed box, slab clipping with kGeometryTolerance slack.
bool segment_box_intersects(const Segment& seg, const Box& box);
bool segment_box_intersects(PointView a, PointView b, const Box& box);

/// Parametric interval [t_enter, t_exit] of the segment inside the (tolerance
/// inflated) box, or an empty optional-like result with enter > exit.
struct ClipInterval {
  double enter;
  double exit;
  bool empty() const { return enter > exit; }
};
ClipInterval clip_segment_to_box(PointView a, PointView b, const Box& box);

std::string to_string(PointView p);

}  // namespace critprm
