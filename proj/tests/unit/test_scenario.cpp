#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "critprm/rng.hpp"
#include "critprm/scenario.hpp"

using namespace critprm;

namespace {

Point random_point(Rng& rng, std::size_t d) {
  std::vector<double> c(d);
  for (auto& x : c) x = rng.uniform();
  return Point(std::move(c));
}

// Per-box distance from the coordinate-wise excess over the box.
double box_distance_oracle(PointView x, const Box& b) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::max({b.min_corner()[i] - x[i], 0.0, x[i] - b.max_corner()[i]});
    s += e * e;
  }
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("is_free examples") {
  const auto empty = make_empty_hypercube(3);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(empty.is_free(random_point(rng, 3)));

  const auto grid = make_grid_obstacles(2);
  CHECK_FALSE(grid.is_free(Point{0.25, 0.25}));
  CHECK_FALSE(grid.is_free(Point{0.375, 0.3}));
  CHECK_FALSE(grid.is_free(Point{0.125, 0.125}));
  CHECK(grid.is_free(Point{0.125 - 1e-9, 0.2}));
  CHECK_FALSE(empty.is_free(Point{0.0, 0.5, 0.5}));
  CHECK_THROWS_AS(empty.is_free(Point{0.5, 0.5}), DimensionMismatch);
}

TEST_CASE("segment_free examples") {
  const auto empty = make_empty_hypercube(2);
  CHECK(empty.segment_free(Point{0.1, 0.1}, Point{0.9, 0.9}));
  const auto grid = make_grid_obstacles(2);
  CHECK_FALSE(grid.segment_free(Point{0.05, 0.25}, Point{0.45, 0.25}));
  CHECK(grid.segment_free(Point{0.05, 0.5}, Point{0.95, 0.5}));
  CHECK_FALSE(grid.segment_free(Point{0.05, 0.375}, Point{0.95, 0.375}));
}

TEST_CASE("segment_free agrees with a dense sampling oracle") {
  constexpr int kSegments = 100000;
  constexpr int kSamples = 10000;
  const auto scn = make_grid_obstacles(3);
  Rng rng(71);
  int grazing = 0;
  std::vector<double> x(3);
  for (int i = 0; i < kSegments; ++i) {
    const auto a = random_point(rng, 3), b = random_point(rng, 3);
    if (!scn.is_free(a) || !scn.is_free(b)) continue;
    bool sampled_free = true;
    for (int k = 0; k <= kSamples && sampled_free; ++k) {
      const double t = static_cast<double>(k) / kSamples;
      for (std::size_t j = 0; j < 3; ++j) x[j] = a[j] + t * (b[j] - a[j]);
      sampled_free = scn.is_free(x);
    }
    const bool exact = scn.segment_free(a, b);
    if (!sampled_free) {
      CHECK_FALSE(exact);
    } else if (!exact) {
      double longest = 0;
      for (const auto& box : scn.obstacles()) {
        const auto clip = clip_segment_to_box(a, b, box);
        if (!clip.empty()) longest = std::max(longest, clip.exit - clip.enter);
      }
      CHECK(longest <= 1.0 / kSamples + 1e-9);
      ++grazing;
    }
  }
  CHECK(grazing < kSegments / 1000);
}

TEST_CASE("free segments have free interior samples") {
  const auto scn = make_grid_obstacles(2);
  Rng rng(5);
  int tested = 0;
  while (tested < 200) {
    const auto a = random_point(rng, 2), b = random_point(rng, 2);
    if (!scn.segment_free(a, b)) continue;
    ++tested;
    for (int k = 1; k < 1000; ++k) {
      const double t = k / 1000.0;
      CHECK(scn.is_free(Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}));
    }
  }
}

TEST_CASE("empty hypercube") {
  const auto scn = make_empty_hypercube(4);
  CHECK(scn.start() == Point{0.1, 0.1, 0.1, 0.1});
  CHECK(scn.target() == Point{0.9, 0.9, 0.9, 0.9});
  CHECK(scn.obstacles().empty());
  REQUIRE(scn.straight_line_optimum());
  CHECK(*scn.straight_line_optimum() == doctest::Approx(0.8 * 2.0).epsilon(1e-15));
  CHECK(scn.free_volume() == 1.0);
  CHECK(scn.name() == "empty-hypercube:4");
}

TEST_CASE("grid obstacles") {
  CHECK(make_grid_obstacles(2).obstacles().front().max_corner()[0] - make_grid_obstacles(2).obstacles().front().min_corner()[0] ==
        doctest::Approx(0.25).epsilon(1e-15));
  for (std::size_t d = 2; d <= 8; ++d) {
    CAPTURE(d);
    const auto scn = make_grid_obstacles(d);
    CHECK(scn.obstacles().size() == (std::size_t{1} << d));
    double total = 0;
    for (const auto& b : scn.obstacles()) total += b.volume();
    CHECK(total == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(scn.free_volume() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(scn.is_free(scn.start()));
    CHECK(scn.is_free(scn.target()));
    for (std::size_t i = 0; i < d; ++i) CHECK(scn.start()[i] + scn.target()[i] == doctest::Approx(1.0).epsilon(1e-15));
    // Start is equidistant from the origin and the nearest obstacle.
    double nearest = INFINITY;
    for (const auto& b : scn.obstacles()) nearest = std::min(nearest, box_distance_oracle(scn.start(), b));
    CHECK(euclidean_distance(scn.start(), Point::filled(d, 0.0)) == doctest::Approx(nearest).epsilon(1e-12));
    CHECK(grid_obstacles_alpha(d) == scn.start()[0]);
    // Each obstacle sits strictly inside its sub-cube; obstacles are disjoint.
    for (std::size_t k = 0; k < scn.obstacles().size(); ++k) {
      const auto& b = scn.obstacles()[k];
      for (std::size_t i = 0; i < d; ++i) {
        const double lo = (k >> i & 1) ? 0.5 : 0.0;
        CHECK(b.min_corner()[i] > lo);
        CHECK(b.max_corner()[i] < lo + 0.5);
      }
    }
  }
  CHECK_THROWS_AS(make_grid_obstacles(1), ScenarioError);
  CHECK_THROWS_AS(make_grid_obstacles(9), ScenarioError);
}

TEST_CASE("corridor") {
  const auto scn = make_corridor();
  REQUIRE(scn.obstacles().size() == 2);
  CHECK(scn.obstacles()[1].min_corner()[0] - scn.obstacles()[0].max_corner()[0] == doctest::Approx(kCorridorWidth));
  CHECK(kCorridorWidth > 0.5);
  CHECK(scn.is_free(scn.start()));
  CHECK(scn.is_free(scn.target()));
  CHECK_FALSE(scn.segment_free(scn.start(), scn.target()));
  CHECK_FALSE(scn.straight_line_optimum());
  // Neither endpoint sees past its adjacent wall, so every path enters the strip.
  Rng rng(9);
  for (int i = 0; i < 20000; ++i) {
    const Point past_left{0.225 + 0.775 * rng.uniform(), rng.uniform()};
    const Point past_right{0.775 * rng.uniform(), rng.uniform()};
    if (scn.is_free(past_left)) CHECK_FALSE(scn.segment_free(scn.start(), past_left));
    if (scn.is_free(past_right)) CHECK_FALSE(scn.segment_free(scn.target(), past_right));
  }
}

TEST_CASE("clearance examples") {
  CHECK(make_empty_hypercube(2).clearance(Point{0.5, 0.5}) == 0.5);
  const Scenario one("one", 2, {Box(Point{0.6, 0.4}, Point{0.7, 0.6})}, Point{0.1, 0.1}, Point{0.9, 0.9});
  CHECK(one.clearance(Point{0.5, 0.5}) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(one.clearance(Point{0.65, 0.5}) == 0.0);
  CHECK(one.clearance(Point{0.6, 0.5}) == 0.0);
}

TEST_CASE("clearance matches per-box distances and is positive exactly on free space") {
  const auto scn = make_grid_obstacles(3);
  Rng rng(12);
  for (int i = 0; i < 20000; ++i) {
    const auto x = random_point(rng, 3);
    double oracle = INFINITY;
    for (std::size_t j = 0; j < 3; ++j) oracle = std::min({oracle, x[j], 1.0 - x[j]});
    for (const auto& b : scn.obstacles()) oracle = std::min(oracle, box_distance_oracle(x, b));
    const double c = scn.clearance(x);
    if (scn.is_free(x)) {
      CHECK(c > 0.0);
      CHECK(c == doctest::Approx(oracle).epsilon(1e-12));
    } else {
      CHECK(c == 0.0);
    }
  }
}

TEST_CASE("scenario JSON round trip") {
  for (const auto& scn : {make_empty_hypercube(3), make_grid_obstacles(4), make_corridor()}) {
    const auto text = scenario_to_json(scn);
    CHECK(scenario_from_json(text) == scn);
  }
}

TEST_CASE("scenario JSON round trip is bit exact") {
  const Scenario odd("odd", 2, {Box(Point{0.1 / 3, 0.2}, Point{0.7, 2.0 / 7})}, Point{0.9, 0.05},
                     Point{0.1 + 0.2, 0.95});
  CHECK(scenario_from_json(scenario_to_json(odd)) == odd);

  const auto dir = std::filesystem::temp_directory_path() / "critprm_scenario_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "odd.json";
  save_scenario(odd, path);
  CHECK(load_scenario(path.string()) == odd);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scenario loading errors") {
  CHECK_THROWS_AS(load_scenario("no-such-file.json"), ScenarioError);
  CHECK_THROWS_AS(make_builtin("hypercube:2"), ScenarioError);
  CHECK_THROWS_AS(make_builtin("empty-hypercube:x"), ScenarioError);
  CHECK_THROWS_AS(make_builtin("empty-hypercube:0"), ScenarioError);
  CHECK(load_scenario("grid-obstacles:3") == make_grid_obstacles(3));
  CHECK_THROWS_AS(scenario_from_json("{"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json("[]"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json(R"({"dimension": 2, "start": [0.1, 0.1]})"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json(R"({"dimension": -2, "start": [0.1, 0.1], "target": [0.9, 0.9]})"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json(R"({"dimension": 2, "start": [0.1], "target": [0.9, 0.9]})"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json(R"({"dimension": 2, "start": [0.1, "a"], "target": [0.9, 0.9]})"), ScenarioError);
  CHECK_THROWS_AS(
      scenario_from_json(R"({"dimension": 2, "start": [0.1, 0.1], "target": [0.9, 0.9], "obstacles": [{"min": [0.5, 0.5]}]})"),
      ScenarioError);
  CHECK_THROWS_AS(scenario_from_json(
                      R"({"dimension": 2, "start": [0.1, 0.1], "target": [0.9, 0.9], "obstacles": [{"min": [0.6, 0.5], "max": [0.5, 0.6]}]})"),
                  ScenarioError);
  const auto ok = scenario_from_json(R"({"dimension": 2, "start": [0.1, 0.1], "target": [0.9, 0.9]})");
  CHECK(ok.name() == "custom");
  CHECK(ok.obstacles().empty());
}

TEST_CASE("cost maps") {
  const auto scn = make_corridor();
  const auto coord = CostMap::parse("coord:1:0.5", scn);
  CHECK(coord.kind() == CostMap::Kind::CoordinateDistance);
  CHECK(coord(Point{0.3, 0.8}) == doctest::Approx(0.3));
  const auto pt = CostMap::parse("point:0.5,0.5", scn);
  CHECK(pt.kind() == CostMap::Kind::PointDistance);
  CHECK(pt(Point{0.8, 0.9}) == doctest::Approx(0.5));
  const auto cl = CostMap::parse("clearance", scn);
  CHECK(cl.kind() == CostMap::Kind::Clearance);
  CHECK(cl(Point{0.5, 0.5}) == doctest::Approx(-scn.clearance(Point{0.5, 0.5})));
  const auto k = CostMap::parse("constant:2.5", scn);
  CHECK(k(Point{0.1, 0.2}) == 2.5);
  CHECK(k.field()(Point{0.3, 0.3}) == 2.5);
  CHECK(CostMap::coordinate_distance(0, 0.25)(Point{1.0, 0.0}) == 0.75);

  for (const char* bad : {"coord", "coord:x:0.5", "coord:1", "point:", "point:0.5,a", "constant:nan", "foo", "coord:1:0.5:2"})
    CHECK_THROWS_AS(CostMap::parse(bad, scn), std::invalid_argument);
  CHECK_THROWS_AS(CostMap::constant(INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(CostMap::coordinate_distance(3, 0.5)(Point{0.1, 0.1}), DimensionMismatch);
}
