#include <doctest.h>

#include <algorithm>

#include "latwire/errors.hpp"
#include "latwire/oracle.hpp"
#include "latwire/wiring.hpp"

using namespace latwire;

TEST_SUITE("oracle") {
  TEST_CASE("single vertex") {
    const auto r = optimal_wiring(OrderedTree{});
    CHECK(r.best_volume == 1);
    CHECK(r.witness.vertices == std::vector<GridPoint>{{0, 0}});
  }

  TEST_CASE("paths are optimal at n") {
    for (int n = 1; n <= 7; ++n) {
      const auto r = optimal_wiring(generate_path(n));
      CHECK(r.best_volume == n);
      CHECK(volume(r.witness) == n);
    }
  }

  TEST_CASE("cherry is 3") {
    const auto r = optimal_wiring(parse_tree("(()())"));
    CHECK(r.best_volume == 3);
    CHECK(validate_k_wiring(r.witness, 1).valid());
  }

  TEST_CASE("sandwich for every tree up to 6 vertices") {
    for (int n = 1; n <= 6; ++n)
      for (const auto& t : enumerate_trees(n)) {
        const auto r = optimal_wiring(t);
        const auto constructed = volume(wire(t));
        CHECK(r.best_volume >= n);
        CHECK(r.best_volume <= constructed);
        CHECK(constructed <= (7 * n + 2) / 3);
        CHECK(validate_k_wiring(r.witness, 1).valid());
        CHECK(volume(r.witness) == r.best_volume);
        CHECK(r.witness.vertices.size() == t.size());
        CHECK(r.box_half_width == std::max<std::int64_t>(1, constructed - 1));
        OracleOptions scratch;
        scratch.seed_with_construction = false;
        const auto s = optimal_wiring(t, scratch);
        CHECK(s.best_volume == r.best_volume);
        if (n > 1) CHECK(s.explored > 0);
        CHECK(validate_k_wiring(s.witness, 1).valid());
        CHECK(volume(s.witness) == s.best_volume);
      }
  }

  TEST_CASE("a wider box does not improve the optimum") {
    for (const auto& t : enumerate_trees(5)) {
      const auto base = optimal_wiring(t);
      OracleOptions wide;
      wide.box_half_width = base.box_half_width + 3;
      wide.seed_with_construction = false;
      CHECK(optimal_wiring(t, wide).best_volume == base.best_volume);
    }
  }

  TEST_CASE("limits") {
    CHECK_THROWS_AS(optimal_wiring(generate_path(8)), std::invalid_argument);
    OracleOptions tiny;
    tiny.budget = 3;
    tiny.seed_with_construction = false;
    CHECK_THROWS_AS(optimal_wiring(parse_tree("((()())(()))"), tiny), BudgetError);
  }

  TEST_CASE("reference construction") {
    CHECK(reference_wire(OrderedTree{}) == wire(OrderedTree{}));
    CHECK(reference_wire(generate_bn(5)) == wire(generate_bn(5)));
    CHECK(reference_wire(generate_sn(5)) == wire(generate_sn(5)));
  }

  TEST_CASE("exhaustive V_R") {
    const Reduction cherry = reduce(parse_tree("(()())"));
    const auto c4 = exhaustive_vr(cherry, 4);
    CHECK(c4.plans_examined == 3);
    CHECK(c4.plan[0] >= c4.plan[1]);

    const Reduction r = reduce(random_tree(9, 4));
    const auto zero = legalizing_base(r);
    std::int64_t base_total = 0;
    for (auto c : zero) base_total += c;
    const auto e = exhaustive_vr(r, base_total);
    CHECK(e.plan == zero);
    CHECK(e.plans_examined == 1);

    CHECK(exhaustive_vr(reduce(parse_tree("(()())")), 0).plan == LeafCounts{0, 0});
    CHECK_THROWS_AS(exhaustive_vr(reduce(generate_sn(4)), 16), NoLegalPlanError);
    CHECK_THROWS_AS(exhaustive_vr(reduce(generate_sn(4)), 60, 10), BudgetError);
  }

  TEST_CASE("exhaustive ratio does not decrease on the cherry and the S_4 reduction") {
    const Reduction cherry = reduce(parse_tree("(()())"));
    Rational prev = 0;
    for (std::int64_t n = 0; n <= 24; ++n) {
      const auto e = exhaustive_vr(cherry, n);
      CHECK(e.ratio >= prev);
      prev = e.ratio;
    }
    const Reduction r4 = reduce(generate_sn(4));
    prev = 0;
    for (std::int64_t n = 20; n <= 40; n += 4) {
      const auto e = exhaustive_vr(r4, n);
      CHECK(e.ratio >= prev);
      prev = e.ratio;
    }
  }
}
