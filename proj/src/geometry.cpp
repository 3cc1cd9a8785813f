#include "critprm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace critprm {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                            ", got " + std::to_string(got)) {}

namespace {

void require_finite(const std::vector<double>& coords) {
  if (coords.empty()) throw std::invalid_argument("point must have at least one coordinate");
  for (double c : coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

Point::Point(PointView coords) : coords_(coords.begin(), coords.end()) { require_finite(coords_); }

Point Point::filled(std::size_t dim, double value) { return Point(std::vector<double>(dim, value)); }

Box::Box(Point min_corner, Point max_corner) : min_(std::move(min_corner)), max_(std::move(max_corner)) {
  require_same_dim(min_.dim(), max_.dim());
  for (std::size_t i = 0; i < min_.dim(); ++i) {
    if (min_[i] > max_[i]) throw std::invalid_argument("box min corner exceeds max corner");
  }
}

Box Box::unit(std::size_t dim) { return Box(Point::filled(dim, 0.0), Point::filled(dim, 1.0)); }

Box Box::centered(const Point& center, double side) {
  std::vector<double> lo(center.dim()), hi(center.dim());
  for (std::size_t i = 0; i < center.dim(); ++i) {
    lo[i] = center[i] - side / 2;
    hi[i] = center[i] + side / 2;
  }
  return Box(Point(std::move(lo)), Point(std::move(hi)));
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= max_[i] - min_[i];
  return v;
}

bool Box::contains(PointView x) const {
  require_same_dim(dim(), x.size());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < min_[i] || x[i] > max_[i]) return false;
  }
  return true;
}

double Box::distance(PointView x) const {
  require_same_dim(dim(), x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double gap = 0.0;
    if (x[i] < min_[i]) gap = min_[i] - x[i];
    else if (x[i] > max_[i]) gap = x[i] - max_[i];
    sum += gap * gap;
  }
  return std::sqrt(sum);
}

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) { require_same_dim(a.dim(), b.dim()); }

Path::Path(std::vector<Point> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) throw std::invalid_argument("path needs at least two waypoints");
  for (const auto& w : waypoints_) require_same_dim(waypoints_.front().dim(), w.dim());
}

bool Path::has_consecutive_duplicates() const {
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (waypoints_[i] == waypoints_[i - 1]) return true;
  }
  return false;
}

PointSet::PointSet(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
  if (dim_ == 0) throw std::invalid_argument("point set dimension must be positive");
  if (data_.size() % dim_ != 0) throw std::invalid_argument("point set data is not a multiple of the dimension");
}

void PointSet::push_back(PointView p) {
  require_same_dim(dim_, p.size());
  data_.insert(data_.end(), p.begin(), p.end());
}

void PointSet::append(const PointSet& other) {
  if (other.empty()) return;
  require_same_dim(dim_, other.dim());
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
}

double euclidean_distance(PointView a, PointView b) {
  require_same_dim(a.size(), b.size());
  return std::sqrt(distance_squared_unchecked(a, b));
}

double path_length(const Path& path) {
  double total = 0.0;
  const auto& w = path.waypoints();
  for (std::size_t i = 1; i < w.size(); ++i) total += euclidean_distance(w[i - 1], w[i]);
  return total;
}

namespace {

double checked_eval(const ScalarField& field, PointView x) {
  const double v = field(x);
  if (!std::isfinite(v)) throw std::domain_error("cost map undefined at " + to_string(x));
  return v;
}

}  // namespace

double segment_bottleneck(PointView a, PointView b, const ScalarField& field, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  require_same_dim(a.size(), b.size());
  const double len = std::sqrt(distance_squared_unchecked(a, b));
  std::size_t pieces = 1;
  while (len / static_cast<double>(pieces) > resolution) pieces *= 2;

  double best = std::max(checked_eval(field, a), checked_eval(field, b));
  std::vector<double> x(a.size());
  for (std::size_t j = 1; j < pieces; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(pieces);
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] + t * (b[i] - a[i]);
    best = std::max(best, checked_eval(field, x));
  }
  return best;
}

double path_bottleneck(const Path& path, const ScalarField& field, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  const auto& w = path.waypoints();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < w.size(); ++i) best = std::max(best, segment_bottleneck(w[i - 1], w[i], field, resolution));
  return best;
}

ClipInterval clip_segment_to_box(PointView a, PointView b, const Box& box) {
  require_same_dim(a.size(), box.dim());
  require_same_dim(b.size(), box.dim());
  double enter = 0.0;
  double exit = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double lo = box.min_corner()[i] - kGeometryTolerance;
    const double hi = box.max_corner()[i] + kGeometryTolerance;
    const double dir = b[i] - a[i];
    if (dir == 0.0) {
      if (a[i] < lo || a[i] > hi) return {1.0, 0.0};
      continue;
    }
    double t0 = (lo - a[i]) / dir;
    double t1 = (hi - a[i]) / dir;
    if (t0 > t1) std::swap(t0, t1);
    enter = std::max(enter, t0);
    exit = std::min(exit, t1);
    if (enter > exit) return {1.0, 0.0};
  }
  return {enter, exit};
}

bool segment_box_intersects(PointView a, PointView b, const Box& box) { return !clip_segment_to_box(a, b, box).empty(); }

bool segment_box_intersects(const Segment& seg, const Box& box) { return segment_box_intersects(seg.a, seg.b, box); }

std::string to_string(PointView p) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
  out << ')';
  return out.str();
}

}  // namespace critprm
