#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "latwire/oracle.hpp"
#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

using namespace latwire;

namespace {

std::int64_t ceil_seven_thirds(std::int64_t n) { return (7 * n + 2) / 3; }

std::vector<OrderedTree> small_corpus(int max_n) {
  std::vector<OrderedTree> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& t : enumerate_trees(n)) out.push_back(std::move(t));
  return out;
}

GridWiring point_wiring(GridPoint p) { return GridWiring{{p}, {}}; }

}  // namespace

TEST_SUITE("wiring_engine") {
  TEST_CASE("single vertex") {
    const auto w = wire(OrderedTree{});
    CHECK(w.vertices == std::vector<GridPoint>{{0, 0}});
    CHECK(w.edges.empty());
    CHECK(volume(w) == 1);
    CHECK(volume_by_formula(w, OrderedTree{}) == 1);
    CHECK(conn(w) == 0);
    CHECK(bounding_box(w) == Box{{0, 0}, {0, 0}});
  }

  TEST_CASE("path runs straight up") {
    const auto w = wire(generate_path(3));
    CHECK(w.vertices == std::vector<GridPoint>{{0, 0}, {0, 1}, {0, 2}});
    CHECK(volume(w) == 3);
    for (int n = 1; n <= 20; ++n) {
      CHECK(volume(wire(generate_path(n))) == n);
      CHECK(volume_by_formula(wire(generate_path(n)), generate_path(n)) == n);
    }
  }

  TEST_CASE("cherry") {
    const auto t = parse_tree("(()())");
    const auto w = wire(t);
    CHECK(w.vertices == std::vector<GridPoint>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(volume(w) == 3);
    CHECK(volume_by_formula(w, t) == 3);
    CHECK(conn(w) == 0);
    CHECK(bounding_box(w) == Box{{0, 0}, {1, 1}});
    REQUIRE(w.edges.size() == 2);
    CHECK(w.edges[0] == EdgePath{0, 1, {{0, 0}, {0, 1}}});
    CHECK(w.edges[1] == EdgePath{0, 2, {{0, 0}, {1, 0}}});
  }

  TEST_CASE("conn") {
    CHECK(conn(point_wiring({0, 0})) == 0);
    CHECK(conn(point_wiring({3, -4})) == 4);
    CHECK(conn(point_wiring({3, 4})) == 4);
    GridWiring w{{{0, 0}, {0, 2}}, {{0, 1, {{0, 0}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {1, 2}, {0, 2}}}}};
    CHECK(conn(w) == 1);
  }

  TEST_CASE("rotate and translate") {
    CHECK(rotate_cw(point_wiring({0, 0})).vertices[0] == GridPoint{0, 0});
    CHECK(rotate_cw(point_wiring({0, 1})).vertices[0] == GridPoint{1, 0});
    CHECK(rotate_cw(point_wiring({2, 5})).vertices[0] == GridPoint{5, -2});
    CHECK(translate(point_wiring({0, 0}), {0, 3}).vertices[0] == GridPoint{0, 3});
    const auto w = wire(random_tree(60, 11));
    CHECK(translate(w, {0, 0}) == w);
    CHECK(rotate_cw(rotate_cw(rotate_cw(rotate_cw(w)))) == w);
    CHECK(rotate_cw(w) != w);
    CHECK(volume(rotate_cw(w)) == volume(w));
    CHECK(volume(translate(w, {-7, 12})) == volume(w));
  }

  TEST_CASE("B_4 layout coordinates") {
    const auto b4 = generate_bn(4);
    const auto trace = wire_with_trace(b4);
    const auto& w = trace.wiring;
    const std::set<GridPoint> expected{
        {0, 0}, {0, 5}, {0, 8}, {0, 10}, {0, 11}, {0, 12}, {1, 3}, {1, 7}, {1, 9}, {1, 10}, {1, 11},
        {2, 2}, {2, 3}, {2, 4}, {2, 6}, {2, 7}, {2, 8}, {2, 10}, {3, 1}, {3, 2}, {3, 3}, {3, 5},
        {3, 7}, {3, 8}, {4, 4}, {4, 8}, {5, 3}, {5, 4}, {5, 5}, {6, 4}, {6, 5}, {7, 5}};
    const std::set<GridPoint> got(w.vertices.begin(), w.vertices.end());
    CHECK(got.size() == 32);
    CHECK(got == expected);
    CHECK(volume(w) == volume_by_formula(w, b4));
    CHECK(volume(w) == 44);
    // node 1 is the branching root under the extra vertex
    const auto& step = trace.steps[1];
    REQUIRE(step.first.has_value());
    REQUIRE(step.second.has_value());
    CHECK(step.first->min.x >= 0);
    CHECK(step.first->min.y >= 1);
    CHECK(step.second->min.x >= 1);
    CHECK(step.second->max.y <= 0);
    CHECK(quadrant_separated(step));
  }

  TEST_CASE("validation catches collisions and overloads") {
    // two vertices on one point
    GridWiring dup{{{0, 0}, {0, 0}}, {{0, 1, {{0, 0}}}}};
    auto report = validate_k_wiring(dup, 1);
    CHECK_FALSE(report.valid());
    CHECK(report.k_vertex >= 2);
    REQUIRE(report.vertex_collisions.size() == 1);
    CHECK(report.vertex_collisions[0].point == GridPoint{0, 0});
    CHECK(report.vertex_collisions[0].nodes == std::vector<NodeId>{0, 1});
    CHECK(validate_k_wiring(dup, 2).vertex_collisions.empty());

    // two paths over the unit edge (0,0)-(0,1)
    GridWiring shared{{{0, 0}, {0, 2}, {1, 1}},
                      {{0, 1, {{0, 0}, {0, 1}, {0, 2}}}, {0, 2, {{0, 0}, {0, 1}, {1, 1}}}}};
    report = validate_k_wiring(shared, 1);
    CHECK_FALSE(report.valid());
    CHECK(report.k_edge >= 2);
    REQUIRE(report.edge_overloads.size() == 1);
    CHECK(report.edge_overloads[0].edge == UnitEdge{{0, 0}, {0, 1}});
    CHECK(validate_k_wiring(shared, 2).valid());

    // broken continuity and wrong endpoint
    GridWiring broken{{{0, 0}, {0, 2}}, {{0, 1, {{0, 0}, {0, 2}}}}};
    CHECK_FALSE(validate_k_wiring(broken, 1).structural_errors.empty());
    GridWiring wrong_end{{{0, 0}, {0, 2}}, {{0, 1, {{0, 0}, {0, 1}}}}};
    CHECK_FALSE(validate_k_wiring(wrong_end, 1).structural_errors.empty());
    GridWiring bad_id{{{0, 0}}, {{0, 4, {{0, 0}}}}};
    CHECK_FALSE(validate_k_wiring(bad_id, 1).structural_errors.empty());
    CHECK_THROWS_AS(validate_k_wiring(dup, 0), std::invalid_argument);
  }

  TEST_CASE("every tree up to 10 vertices: valid, bounded, formula agrees, quadrants separate") {
    for (const auto& t : small_corpus(10)) {
      const auto trace = wire_with_trace(t);
      const auto& w = trace.wiring;
      const auto n = static_cast<std::int64_t>(t.size());
      const auto report = validate_k_wiring(w, 1);
      CHECK(report.valid());
      CHECK(report.k_vertex == 1);
      CHECK(report.k_edge == 1);
      const auto vol = volume(w);
      CHECK(vol == volume_by_formula(w, t));
      CHECK(vol >= n);
      CHECK(vol <= ceil_seven_thirds(n));
      for (const auto& step : trace.steps) CHECK(quadrant_separated(step));
      // the image sits in the closed upper half-plane when the root has one child
      if (t.children(t.root()).size() <= 1) CHECK(conn(w) == 0);
    }
  }

  TEST_CASE("wire is deterministic and matches the step-by-step construction") {
    for (const auto& t : small_corpus(9)) {
      CHECK(wire(t) == wire(t));
      CHECK(reference_wire(t) == wire(t));
    }
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
      const auto t = random_tree(1 + static_cast<std::int64_t>(rng() % 200), rng());
      CHECK(reference_wire(t) == wire(t));
    }
  }

  TEST_CASE("large random trees stay within the bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto t = random_tree(5000, seed);
      const auto w = wire(t);
      CHECK(validate_k_wiring(w, 1).valid());
      CHECK(volume(w) == volume_by_formula(w, t));
      CHECK(volume(w) <= ceil_seven_thirds(5000));
    }
    const auto deep = generate_path(100000);
    CHECK(volume(wire(deep)) == 100000);
    const auto b = generate_bn(14);
    const auto w = wire(b);
    CHECK(volume(w) <= ceil_seven_thirds(static_cast<std::int64_t>(b.size())));
  }

  TEST_CASE("bounding box") {
    const auto w = wire(random_tree(300, 2));
    const auto box = bounding_box(w);
    for (const auto& p : w.vertices) {
      CHECK(p.x >= box.min.x);
      CHECK(p.x <= box.max.x);
      CHECK(p.y >= box.min.y);
      CHECK(p.y <= box.max.y);
    }
    CHECK(box.area() >= volume(w));
  }
}
