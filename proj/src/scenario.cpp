#include "critprm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace critprm {

namespace {

using nlohmann::json;

bool strictly_inside_cube(PointView x) {
  return std::all_of(x.begin(), x.end(), [](double c) { return c > 0.0 && c < 1.0; });
}

std::size_t parse_dimension(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw ScenarioError("bad dimension in scenario name '" + spec + "'");
  }
  if (used != text.size() || value < 1) throw ScenarioError("bad dimension in scenario name '" + spec + "'");
  return static_cast<std::size_t>(value);
}

Point point_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ScenarioError(std::string("field '") + field + "' must be an array of numbers");
  std::vector<double> coords;
  for (const auto& v : j) {
    if (!v.is_number()) throw ScenarioError(std::string("field '") + field + "' must be an array of numbers");
    coords.push_back(v.get<double>());
  }
  try {
    return Point(std::move(coords));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("field '") + field + "': " + e.what());
  }
}

}  // namespace

Scenario::Scenario(std::string name, std::size_t dim, std::vector<Box> obstacles, Point start, Point target)
    : name_(std::move(name)), dim_(dim), obstacles_(std::move(obstacles)), start_(std::move(start)),
      target_(std::move(target)) {
  if (dim_ == 0) throw ScenarioError("scenario dimension must be positive");
  if (start_.dim() != dim_ || target_.dim() != dim_) throw ScenarioError("start/target dimension mismatch");
  for (const auto& box : obstacles_) {
    if (box.dim() != dim_) throw ScenarioError("obstacle dimension mismatch");
  }
}

void Scenario::check_dim(PointView x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
}

bool Scenario::is_free(PointView x) const {
  check_dim(x);
  if (!strictly_inside_cube(x)) return false;
  return std::none_of(obstacles_.begin(), obstacles_.end(), [&](const Box& b) { return b.contains(x); });
}

bool Scenario::segment_free(PointView a, PointView b) const {
  check_dim(a);
  check_dim(b);
  // The open cube is convex, so free endpoints keep the whole segment inside.
  if (!strictly_inside_cube(a) || !strictly_inside_cube(b)) return false;
  return std::none_of(obstacles_.begin(), obstacles_.end(),
                      [&](const Box& box) { return segment_box_intersects(a, b, box); });
}

double Scenario::clearance(PointView x) const {
  if (!is_free(x)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const double c : x) best = std::min({best, c, 1.0 - c});
  for (const auto& box : obstacles_) best = std::min(best, box.distance(x));
  return best;
}

double Scenario::free_volume() const {
  double volume = 1.0;
  for (const auto& box : obstacles_) {
    double clipped = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double lo = std::max(0.0, box.min_corner()[i]);
      const double hi = std::min(1.0, box.max_corner()[i]);
      clipped *= std::max(0.0, hi - lo);
    }
    volume -= clipped;
  }
  return volume;
}

std::optional<double> Scenario::straight_line_optimum() const {
  if (!segment_free(start_, target_)) return std::nullopt;
  return euclidean_distance(start_, target_);
}

Scenario make_empty_hypercube(std::size_t d) {
  if (d == 0) throw ScenarioError("dimension must be positive");
  return Scenario("empty-hypercube:" + std::to_string(d), d, {}, Point::filled(d, 0.1), Point::filled(d, 0.9));
}

double grid_obstacles_alpha(std::size_t d) {
  const double side = 0.5 * std::pow(0.25, 1.0 / static_cast<double>(d));
  return (0.25 - side / 2.0) / 2.0;
}

Scenario make_grid_obstacles(std::size_t d) {
  if (d < kGridObstaclesMinDim || d > kGridObstaclesMaxDim)
    throw ScenarioError("grid-obstacles supports 2 <= d <= 8, got d=" + std::to_string(d));
  const double side = 0.5 * std::pow(0.25, 1.0 / static_cast<double>(d));
  std::vector<Box> obstacles;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> center(d);
    for (std::size_t i = 0; i < d; ++i) center[i] = (mask >> i & 1) ? 0.75 : 0.25;
    obstacles.push_back(Box::centered(Point(std::move(center)), side));
  }
  const double alpha = grid_obstacles_alpha(d);
  return Scenario("grid-obstacles:" + std::to_string(d), d, std::move(obstacles), Point::filled(d, alpha),
                  Point::filled(d, 1.0 - alpha));
}

Scenario make_corridor() {
  std::vector<Box> walls = {
      Box(Point{0.2, 0.0}, Point{0.225, 0.9}),
      Box(Point{0.775, 0.1}, Point{0.8, 1.0}),
  };
  return Scenario("corridor", 2, std::move(walls), Point{0.1, 0.5}, Point{0.9, 0.5});
}

Scenario make_builtin(const std::string& spec) {
  if (spec == "corridor") return make_corridor();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ScenarioError("unknown builtin scenario '" + spec + "'");
  const auto kind = spec.substr(0, colon);
  const auto d = parse_dimension(spec.substr(colon + 1), spec);
  if (kind == "empty-hypercube") return make_empty_hypercube(d);
  if (kind == "grid-obstacles") return make_grid_obstacles(d);
  throw ScenarioError("unknown builtin scenario '" + spec + "'");
}

Scenario load_scenario(const std::string& ref) {
  if (ref == "corridor" || ref.rfind("empty-hypercube:", 0) == 0 || ref.rfind("grid-obstacles:", 0) == 0)
    return make_builtin(ref);
  std::ifstream in(ref);
  if (!in) throw ScenarioError("cannot open scenario '" + ref + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid scenario JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("scenario JSON must be an object");
  for (const char* field : {"dimension", "start", "target"}) {
    if (!j.contains(field)) throw ScenarioError(std::string("scenario missing field '") + field + "'");
  }
  if (!j["dimension"].is_number_unsigned()) throw ScenarioError("field 'dimension' must be a positive integer");
  const auto dim = j["dimension"].get<std::size_t>();
  std::vector<Box> obstacles;
  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array()) throw ScenarioError("field 'obstacles' must be an array");
    for (const auto& o : j["obstacles"]) {
      if (!o.is_object() || !o.contains("min") || !o.contains("max"))
        throw ScenarioError("each obstacle needs 'min' and 'max'");
      try {
        obstacles.emplace_back(point_from_json(o["min"], "min"), point_from_json(o["max"], "max"));
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("invalid obstacle: ") + e.what());
      }
    }
  }
  const std::string name = j.value("name", std::string("custom"));
  return Scenario(name, dim, std::move(obstacles), point_from_json(j["start"], "start"),
                  point_from_json(j["target"], "target"));
}

std::string scenario_to_json(const Scenario& scn) {
  json j;
  j["name"] = scn.name();
  j["dimension"] = scn.dim();
  j["start"] = scn.start().coords();
  j["target"] = scn.target().coords();
  j["obstacles"] = json::array();
  for (const auto& box : scn.obstacles()) {
    j["obstacles"].push_back({{"min", box.min_corner().coords()}, {"max", box.max_corner().coords()}});
  }
  return j.dump(2);
}

void save_scenario(const Scenario& scn, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write scenario '" + path.string() + "'");
  out << scenario_to_json(scn) << '\n';
}

CostMap CostMap::coordinate_distance(std::size_t axis, double value) {
  CostMap m(Kind::CoordinateDistance, "coord:" + std::to_string(axis) + ":" + std::to_string(value));
  m.axis_ = axis;
  m.value_ = value;
  return m;
}

CostMap CostMap::point_distance(Point p) {
  CostMap m(Kind::PointDistance, "point:" + to_string(p));
  m.point_ = std::move(p);
  return m;
}

CostMap CostMap::clearance(const Scenario& scn) {
  CostMap m(Kind::Clearance, "clearance");
  m.scenario_ = std::make_shared<const Scenario>(scn);
  return m;
}

CostMap CostMap::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant cost must be finite");
  CostMap m(Kind::Constant, "constant:" + std::to_string(value));
  m.value_ = value;
  return m;
}

CostMap CostMap::parse(const std::string& spec, const Scenario& scn) {
  auto fail = [&]() -> CostMap { throw std::invalid_argument("bad cost map '" + spec + "'"); };
  auto number = [&](const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != text.size() || !std::isfinite(v)) fail();
    return v;
  };
  if (spec == "clearance") return clearance(scn);
  if (spec.rfind("constant:", 0) == 0) return constant(number(spec.substr(9)));
  if (spec.rfind("coord:", 0) == 0) {
    const auto rest = spec.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) return fail();
    const double axis = number(rest.substr(0, colon));
    if (axis < 0 || axis != std::floor(axis) || axis >= static_cast<double>(scn.dim())) return fail();
    return coordinate_distance(static_cast<std::size_t>(axis), number(rest.substr(colon + 1)));
  }
  if (spec.rfind("point:", 0) == 0) {
    std::vector<double> coords;
    std::stringstream in(spec.substr(6));
    std::string item;
    while (std::getline(in, item, ',')) coords.push_back(number(item));
    if (coords.size() != scn.dim()) return fail();
    return point_distance(Point(std::move(coords)));
  }
  return fail();
}

double CostMap::operator()(PointView x) const {
  switch (kind_) {
    case Kind::CoordinateDistance:
      if (axis_ >= x.size()) throw DimensionMismatch(axis_ + 1, x.size());
      return std::abs(x[axis_] - value_);
    case Kind::PointDistance:
      return euclidean_distance(x, point_);
    case Kind::Clearance:
      return -scenario_->clearance(x);
    case Kind::Constant:
      return value_;
  }
  return 0.0;
}

ScalarField CostMap::field() const {
  return [m = *this](PointView x) { return m(x); };
}

}  // namespace critprm
