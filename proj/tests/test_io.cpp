#include <random>

#include "doctest.h"
#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/io.hpp"
#include "poset_pursuit/render.hpp"
#include "poset_pursuit/strategies.hpp"

using namespace pursuit;

TEST_CASE("spaces round-trip through JSON") {
  for (auto& name : catalog_sample_names()) {
    CAPTURE(name);
    FinitePoset x = catalog(name);
    CHECK(poset_from_json(parse_json(to_json(x).dump())) == x);
  }
  CHECK(poset_from_json(Json("@Yoke")) == catalog("Yoke"));
  CHECK(load_space("@S21")->size() == 6);
  CHECK(load_space(R"({"points": ["a", "b"], "relations": [["a", "b"]]})")->height() == 1);
}

TEST_CASE("malformed input is reported with a position") {
  try {
    parse_json("{\n  \"points\": [\"a\",\n  ]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("input:3:") != std::string::npos);
  }
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"points": ["a"], "relations": [["a", "b"]]})")), ParseError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"points": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]})")),
                  ParseError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"relations": []})")), ParseError);
  CHECK_THROWS_AS(load_space("/nonexistent/space.json"), ParseError);

  auto input = preorder_from_json(parse_json(R"({"points": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]})"));
  CHECK(std::holds_alternative<NonT0Report>(from_relations(input)));
}

TEST_CASE("step paths round-trip through JSON") {
  for (const char* name : {"S21", "Yoke", "Fence(4)", "Pseudocircle"}) {
    auto x = share(catalog(name));
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
      auto g = random_step_path(x, rng, 6);
      auto back = step_path_from_json(x, parse_json(to_json(g).dump()));
      REQUIRE(back == g);
    }
  }
  auto x = share(catalog("ConeV(2)"));
  auto j = parse_json(R"({"breakpoints": [{"t": 0, "w": "a"}, {"t": "1/2", "w": "a"}],
                          "intervals": ["c0"], "tail": "c1"})");
  auto g = step_path_from_json(x, j);
  CHECK(g.time(1) == make_time(1, 2));
  CHECK(g.tail() == x->at("c1"));
  // The interval value a is not below the breakpoint values.
  auto bad = parse_json(R"({"breakpoints": [{"t": 0, "w": "c0"}, {"t": 1, "w": "c1"}], "intervals": ["a"]})");
  CHECK_THROWS(step_path_from_json(x, bad));
}

TEST_CASE("regular paths round-trip through JSON") {
  std::vector<RegularPath> paths{max_strategy(share(catalog("ConeV(3)"))), height1_strategy(share(catalog("S21op"))),
                                 fractal_strategy()};
  for (auto& p : paths) {
    auto back = regular_path_from_json(p.space_ptr(), parse_json(to_json(p).dump()));
    CHECK(same_tree(*back.root(), *p.root()));
    CHECK(back.start() == p.start());
    CHECK(to_json(back) == to_json(p));
  }
}

TEST_CASE("galleries and verdicts serialize") {
  for (auto& name : gallery_names()) {
    auto s = gallery(name);
    auto back = gallery_from_json(parse_json(to_json(s).dump()));
    CHECK(back.poset == s.poset);
    CHECK(back.dim == s.dim);
    CHECK(back.reconstructed == s.reconstructed);
  }
  auto j = to_json(classify(share(catalog("Yoke"))));
  CHECK(j["outcome"] == "RobberWins");
  CHECK(j["certificate"]["type"] == "responder");
  auto c = to_json(classify(share(catalog("Fractal6"))));
  CHECK(c["certificate"]["kind"] == to_string(StrategyKind::Fractal));
}

TEST_CASE("rendering") {
  auto dot = hasse_dot(catalog("Fractal6"));
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++edges;
  CHECK(edges == 5);

  auto x = share(catalog("S21"));
  auto g = StepPath::from_sequence(x, {x->at("0"), x->at("1"), x->at("0")});
  auto svg = step_path_svg(g);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}
