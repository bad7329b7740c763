#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/verifier.hpp"

using namespace pursuit;

namespace {

PosetPtr cat(const char* name) { return share(catalog(name)); }

StepPath seq(const PosetPtr& x, std::initializer_list<const char*> names) {
  std::vector<Point> v;
  for (auto n : names) v.push_back(x->at(n));
  return StepPath::from_sequence(x, v);
}

RegularPath zeta_cone(const PosetPtr& x, int m) {
  std::vector<NodePtr> cells;
  for (int i = 0; i < m; ++i)
    cells.push_back(rp::concat(*x, {rp::constant(x->at("c" + std::to_string(i)), 1), rp::instant(x->at("a"))}));
  return RegularPath(x, rp::omega(*x, cells, x->at("a"), Side::Left, 1));
}

}  // namespace

TEST_CASE("link relation") {
  auto v2 = cat("ConeV(2)");
  const Point a = v2->at("a"), c0 = v2->at("c0"), c1 = v2->at("c1");
  CHECK(link(*v2, a, c0, c0));
  CHECK(link(*v2, c0, c1, a));
  CHECK_FALSE(link(*v2, c1, c1, c1));
  CHECK_FALSE(link(*v2, a, c0, c1));
  for (const auto& name : catalog_sample_names()) {
    auto x = catalog(name);
    LinkTable t(x);
    for (Point v = 0; v < x.size(); ++v)
      for (Point p = 0; p < x.size(); ++p) {
        CHECK(link(x, v, p, p) == !(x.down(p) - PointSet::single(v)).empty());
        for (Point q = 0; q < x.size(); ++q) {
          CHECK(link(x, v, p, q) == link(x, v, q, p));
          CHECK(t(v, p, q) == link(x, v, p, q));
        }
      }
  }
}

TEST_CASE("escape existence on small cones") {
  auto v2 = cat("ConeV(2)");
  auto cop = seq(v2, {"c0", "c0", "a", "c1", "c1"});
  CHECK_FALSE(escape_exists(*v2, cop));
  CHECK(is_strong_strategy(cop).strong);
  auto miss = StepPath::constant(v2, v2->at("c0"), 0, 1);
  auto w = escape_exists(*v2, miss);
  REQUIRE(w);
  auto v3 = cat("ConeV(3)");
  auto cop3 = seq(v3, {"c0", "c0", "a", "c1", "a", "c2", "c2"});
  auto w3 = escape_exists(*v3, cop3);
  REQUIRE(w3);
  auto esc = realize_escape(cop3, *w3);
  CHECK_FALSE(coincidence_step(cop3, esc));
  CHECK(esc.image().contains(v3->at("c2")));
}

TEST_CASE("escape existence agrees with robber enumeration (three points)") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& xs : enumerate_posets(n)) {
      auto x = share(xs);
      auto m = oracle::matrix_of(*x);
      for (int k = 1; k <= 3; ++k)
        for (const auto& s : all_value_sequences(*x, k)) {
          auto cop = StepPath::from_sequence(x, s);
          auto w = escape_exists(*x, cop);
          CHECK(w.has_value() == oracle::brute_escape(m, s));
          if (w) CHECK_FALSE(coincidence_step(cop, realize_escape(cop, *w)));
        }
    }
}

TEST_CASE("escape paths are valid and refinement keeps the verdict") {
  std::mt19937_64 rng(23);
  for (const auto& name : catalog_sample_names()) {
    auto x = share(catalog(name));
    for (int rep = 0; rep < 60; ++rep) {
      auto cop = random_step_path(x, rng, 6);
      auto w = escape_exists(*x, cop);
      if (w) {
        auto r = realize_escape(cop, *w);
        CHECK_FALSE(coincidence_step(cop, r));
        CHECK(r.start() == cop.start());
        CHECK(r.end() == cop.end());
      }
      // Split an interval at its midpoint, inserting its own value as breakpoint.
      const int i = static_cast<int>(rng() % cop.intervals());
      auto t = cop.times();
      auto bw = cop.breakpoint_values();
      auto iv = cop.interval_values();
      t.insert(t.begin() + i + 1, midpoint(t[i], t[i + 1]));
      bw.insert(bw.begin() + i + 1, iv[i]);
      iv.insert(iv.begin() + i + 1, iv[i]);
      CHECK(escape_exists(*x, StepPath(x, t, bw, iv)).has_value() == w.has_value());
    }
  }
}

TEST_CASE("constant tails") {
  auto v2 = cat("ConeV(2)");
  StepPath cop(v2, {0, 1}, {v2->at("a"), v2->at("c0")}, {v2->at("c0")}, v2->at("c0"));
  auto w = escape_exists(*v2, cop);
  REQUIRE(w);
  REQUIRE(w->tail);
  CHECK(*w->tail != v2->at("c0"));
  auto r = realize_escape(cop, *w);
  CHECK_FALSE(coincidence_step(cop, r));
  auto chain = cat("Chain(2)");
  StepPath trap(chain, {0, 1}, {chain->at("x1"), chain->at("x0")}, {chain->at("x0")}, chain->at("x0"));
  CHECK_FALSE(escape_exists(*chain, trap));
}

TEST_CASE("grid search matches literal enumeration on a coarse grid") {
  auto v2 = cat("ConeV(2)");
  auto v3 = cat("ConeV(3)");
  std::vector<RegularPath> cops{zeta_cone(v2, 2), zeta_cone(v3, 3),
                                RegularPath::from_step_path(seq(v3, {"c0", "c0", "a", "c1", "a", "c2", "c2"}))};
  for (const auto& cop : cops) {
    const FinitePoset& x = cop.space();
    std::vector<Time> grid;
    for (int i = 0; i <= 4; ++i) grid.push_back(cop.start() + cop.duration() * make_time(i, 4));
    for (int budget = 0; budget <= 2; ++budget) {
      bool literal = false;
      // Interior breakpoint positions: every subset of the three inner grid points of size <= budget.
      for (int mask = 0; mask < 8 && !literal; ++mask) {
        if (__builtin_popcount(mask) > budget) continue;
        std::vector<Time> t{grid[0]};
        for (int j = 0; j < 3; ++j)
          if (mask >> j & 1) t.push_back(grid[j + 1]);
        t.push_back(grid[4]);
        const int k = static_cast<int>(t.size()) - 1;
        for (const auto& s : all_value_sequences(x, k)) {
          auto r = StepPath::from_sequence(cop.space_ptr(), s);
          r = StepPath(cop.space_ptr(), t, r.breakpoint_values(), r.interval_values());
          if (!coincidence_regular_step(cop, r)) {
            literal = true;
            break;
          }
        }
      }
      CHECK(grid_escape_search(cop, grid, budget).has_value() == literal);
    }
  }
}

TEST_CASE("bounded search against regular cops") {
  auto v2 = cat("ConeV(2)");
  auto c = RegularPath(v2, rp::concat(*v2, {rp::instant(v2->at("a")), rp::constant(v2->at("a"), 1),
                                             rp::instant(v2->at("a"))}));
  auto r = bounded_escape_search(c, 0, 1);
  REQUIRE(r.escape);
  CHECK_FALSE(coincidence_regular_step(c, *r.escape));

  auto v3 = cat("ConeV(3)");
  auto z = zeta_cone(v3, 3);
  auto rz = bounded_escape_search(z, 4, 6, true);
  CHECK_FALSE(rz.escape);
  REQUIRE(rz.deeper_found);
  CHECK_FALSE(*rz.deeper_found);
  for (int k = 1; k <= 6; ++k) CHECK(escape_exists(*v3, unroll(z, k)));
}
