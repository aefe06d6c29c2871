#include <doctest.h>

#include <fstream>
#include <sstream>

#include "latwire/rational.hpp"
#include "latwire/render.hpp"
#include "latwire/serialize.hpp"
#include "latwire/tree.hpp"

using namespace latwire;

#ifndef LATWIRE_GOLDEN_DIR
#define LATWIRE_GOLDEN_DIR "tests/golden"
#endif

TEST_SUITE("serialization") {
  TEST_CASE("single vertex json") {
    CHECK(embedding_to_json(wire(OrderedTree{})) ==
          R"({"vertices":{"0":[0,0]},"edges":[],"volume":1,"bbox":[[0,0],[0,0]]})");
  }

  TEST_CASE("cherry json") {
    CHECK(embedding_to_json(wire(parse_tree("(()())"))) ==
          R"({"vertices":{"0":[0,0],"1":[0,1],"2":[1,0]},"edges":[{"from":0,"to":1,"path":[[0,0],[0,1]]},)"
          R"({"from":0,"to":2,"path":[[0,0],[1,0]]}],"volume":3,"bbox":[[0,0],[1,1]]})");
  }

  TEST_CASE("round trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto w = wire(random_tree(80, seed));
      const auto doc = parse_embedding(embedding_to_json(w));
      CHECK(doc.wiring == w);
      CHECK(doc.stated_volume == volume(w));
      CHECK(doc.stated_bbox == bounding_box(w));
    }
  }

  TEST_CASE("extra keys are ignored") {
    const auto doc = parse_embedding(
        R"({"meta":{"seed":1},"vertices":{"0":[0,0]},"edges":[],"volume":1,"bbox":[[0,0],[0,0]]})");
    CHECK(doc.wiring.vertices.size() == 1);
  }

  TEST_CASE("malformed embeddings") {
    CHECK_THROWS_AS(parse_embedding("{"), FormatError);
    CHECK_THROWS_AS(parse_embedding("[]"), FormatError);
    CHECK_THROWS_AS(parse_embedding(R"({"vertices":{"1":[0,0]},"edges":[],"volume":1,"bbox":[[0,0],[0,0]]})"),
                    FormatError);
    CHECK_THROWS_AS(parse_embedding(R"({"vertices":{"0":[0.5,0]},"edges":[],"volume":1,"bbox":[[0,0],[0,0]]})"),
                    FormatError);
    CHECK_THROWS_AS(parse_embedding(R"({"vertices":{"0":[0,0]},"edges":[],"bbox":[[0,0],[0,0]]})"), FormatError);
    CHECK_THROWS_AS(parse_embedding(R"({"vertices":{"0":[0,0]},"edges":[{"from":0}],"volume":1,"bbox":[[0,0],[0,0]]})"),
                    FormatError);
  }

  TEST_CASE("golden B_4 embedding") {
    std::ifstream in(std::string(LATWIRE_GOLDEN_DIR) + "/b4_embedding.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string golden = ss.str();
    while (!golden.empty() && (golden.back() == '\n' || golden.back() == '\r')) golden.pop_back();
    CHECK(embedding_to_json(wire(generate_bn(4))) == golden);
  }

  TEST_CASE("svg") {
    const auto t = parse_tree("(()())");
    const auto svg = render_svg(wire(t), t, "seed 0");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<!-- seed 0 -->") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(render_svg(wire(t), t) == render_svg(wire(t), t));
    const auto b4 = generate_bn(4);
    const auto big = render_svg(wire(b4), b4);
    std::size_t circles = 0;
    for (auto pos = big.find("<circle"); pos != std::string::npos; pos = big.find("<circle", pos + 1)) ++circles;
    CHECK(circles == 32);
    CHECK(big.find("#1f3fbf") != std::string::npos);
    CHECK(big.find("#cc2222") != std::string::npos);
  }

  TEST_CASE("rational formatting") {
    CHECK(to_fraction_string(Rational(21) / 16) == "21/16");
    CHECK(to_fraction_string(Rational(3)) == "3/1");
    CHECK(to_fraction_string(Rational(-1) / 2) == "-1/2");
    CHECK(to_decimal(Rational(21) / 16) == "1.312500");
    CHECK(to_decimal(Rational(7) / 3) == "2.333333");
    CHECK(to_decimal(Rational(2) / 3) == "0.666667");
    CHECK(to_decimal(Rational(-2) / 3) == "-0.666667");
    CHECK(to_decimal(Rational(1) / 2, 0) == "1");
    CHECK(parse_fraction("61/48") == Rational(61) / 48);
    CHECK(parse_fraction("5") == 5);
    CHECK(parse_fraction(to_fraction_string(Rational(-7) / 9)) == Rational(-7) / 9);
    CHECK(to_double(Rational(1) / 4) == doctest::Approx(0.25));
  }
}
