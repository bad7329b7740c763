#include "doctest.h"
#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/verifier.hpp"

using namespace pursuit;

namespace {

PosetPtr cat(const std::string& name) { return share(catalog(name)); }

Verdict decide(const std::string& name) { return classify(cat(name)); }

}  // namespace

TEST_CASE("catalog verdicts") {
  struct Expect {
    const char* space;
    Outcome outcome;
    const char* rule;
  };
  const Expect table[] = {
      {"S21", Outcome::RobberWins, "main1"},
      {"S21op", Outcome::CopWins, "main1"},
      {"S30op", Outcome::RobberWins, "main1"},
      {"Yoke", Outcome::RobberWins, "extremal-yoke"},
      {"Fractal6", Outcome::CopWins, "fractal"},
      {"Pseudocircle", Outcome::RobberWins, "fixed-point-free"},
      {"Chain(1)", Outcome::CopWins, "singleton"},
      {"Chain(4)", Outcome::CopWins, "maximum"},
  };
  for (auto& e : table) {
    CAPTURE(e.space);
    Verdict v = decide(e.space);
    CHECK(v.outcome == e.outcome);
    CHECK(v.rule == e.rule);
    CHECK(v.cop.has_value() == (e.outcome == Outcome::CopWins));
    CHECK((v.robber != nullptr) == (e.outcome == Outcome::RobberWins));
  }
  for (int m = 1; m <= 6; ++m) {
    CHECK(decide("ConeV(" + std::to_string(m) + ")").outcome == Outcome::CopWins);
    CHECK(decide("ConeOpW(" + std::to_string(m) + ")").outcome == Outcome::CopWins);
  }
  for (int l = 1; l <= 8; ++l) CHECK(decide("Fence(" + std::to_string(l) + ")").outcome == Outcome::CopWins);
}

TEST_CASE("S21 and its opposite disagree") {
  CHECK(decide("S21").outcome == Outcome::RobberWins);
  CHECK(decide("S21op").outcome == Outcome::CopWins);
}

TEST_CASE("yoke has a minimum and no fixed-point-free map, yet the robber wins") {
  auto y = cat("Yoke");
  CHECK(y->minimum().has_value());
  auto fpf = find_fixed_point_free_map(y);
  CHECK(fpf.attempted);
  CHECK_FALSE(fpf.map);
  CHECK(classify(y).outcome == Outcome::RobberWins);
}

TEST_CASE("non-T0 and disconnected inputs") {
  Verdict v = classify(PreorderInput{{"p", "q", "r"}, {{"p", "q"}, {"q", "p"}, {"p", "r"}}});
  CHECK(v.outcome == Outcome::RobberWins);
  CHECK(v.rule == "non-T0");
  REQUIRE(v.non_t0);
  CHECK_FALSE(validate_certificate(v));

  auto two = share(FinitePoset({"a", "b", "c"}, {{"a", "b"}}));
  Verdict d = classify(two);
  CHECK(d.rule == "disconnected");
  CHECK_FALSE(validate_certificate(d));
}

TEST_CASE("necessary-condition failures above height 1") {
  SUBCASE("cycle among extrema") {
    auto x = share(FinitePoset({"a", "b", "c", "d", "m", "t"},
                               {{"a", "m"}, {"m", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"m", "t"}}));
    Verdict v = classify(x, {.fpf_cap = 0});
    CHECK(v.outcome == Outcome::RobberWins);
    CHECK(v.rule == "extrema-cycle");
    CHECK_FALSE(validate_certificate(v));
  }
  SUBCASE("S21 among extrema") {
    FinitePoset s21 = catalog("S21");
    auto names = s21.names();
    names.push_back("m");
    auto rel = s21.relation_names();
    rel.emplace_back("3", "m");
    rel.emplace_back("m", "0");
    Verdict v = classify(share(FinitePoset(names, rel)));
    CHECK(v.outcome == Outcome::RobberWins);
    CHECK(v.rule == "extrema-S21");
    CHECK(v.robber->kind() == ResponderKind::Extrema);
    CHECK_FALSE(validate_certificate(v));
  }
  SUBCASE("yoke whose top points stop being maximal") {
    // a and b gain separate points above them, so the yoke is not extremal
    // but still has no upper bound.
    auto x = share(FinitePoset({"a", "b", "c", "d", "p", "q"},
                               {{"d", "c"}, {"c", "a"}, {"c", "b"}, {"a", "p"}, {"b", "q"}}));
    Verdict v = classify(x);
    CHECK(v.outcome == Outcome::RobberWins);
    CHECK_FALSE(validate_certificate(v));
  }
}

TEST_CASE("sufficient conditions without a maximum") {
  auto x = share(FinitePoset({"m", "p", "t0", "t1", "u"}, {{"m", "p"}, {"p", "t0"}, {"m", "t1"}, {"u", "t1"}}));
  Verdict v = classify(x);
  CHECK(v.outcome == Outcome::CopWins);
  CHECK(v.rule == "main2");
  CHECK_FALSE(validate_certificate(v));
}

TEST_CASE("fractal rule works up to renaming") {
  auto x = share(FinitePoset({"u1", "u2", "u3", "u4", "u5", "u6"},
                             {{"u5", "u4"}, {"u6", "u4"}, {"u5", "u1"}, {"u6", "u3"}, {"u4", "u2"}}));
  Verdict v = classify(x);
  CHECK(v.rule == "fractal");
  CHECK(v.cop->path.space() == *x);
}

TEST_CASE("the size cap skips the fixed-point-free search") {
  Verdict v = classify(cat("Pseudocircle"), {.fpf_cap = 3});
  CHECK(v.outcome == Outcome::RobberWins);
  CHECK(v.rule == "main1");
  bool noted = false;
  for (auto& line : v.trace) noted |= line.find("skipped") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("robber verdicts transfer from a retract") {
  // X retracts onto S21 (the extra point hangs below 1'); a robber
  // strategy on the retract gives one on X.
  FinitePoset s21 = catalog("S21");
  auto names = s21.names();
  names.push_back("4");
  auto rel = s21.relation_names();
  rel.emplace_back("4", "1'");
  auto x = share(FinitePoset(names, rel));
  CHECK(decide("S21").outcome == Outcome::RobberWins);
  Verdict v = classify(x);
  CHECK(v.outcome == Outcome::RobberWins);
  CHECK_FALSE(validate_certificate(v));
}

TEST_CASE("every small space gets consistent, validated verdicts") {
  for (int n = 1; n <= 4; ++n) {
    auto rep = cross_validate(n);
    CAPTURE(rep.summary());
    for (auto& c : rep.counterexamples) MESSAGE(c);
    CHECK(rep.clean());
  }
  CHECK(cross_validate(3).posets == 5);
}

TEST_CASE("a broken escape search is caught") {
  // Enumeration that may only stay put inside cop intervals misses escapes
  // that the full reference finds.
  auto v2 = cat("ConeV(3)");
  std::vector<Point> seq{v2->at("c0"), v2->at("c0"), v2->at("a"), v2->at("c1"), v2->at("a"), v2->at("c2"),
                         v2->at("c2")};
  auto cop = StepPath::from_sequence(v2, seq);
  CHECK(escape_by_enumeration(cop, 2));
  CHECK_FALSE(escape_by_enumeration(cop, 0));
  CHECK(escape_exists(*v2, cop).has_value());
}
