#include <random>

#include "doctest.h"
#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/regular_path.hpp"
#include "poset_pursuit/step_path.hpp"

using namespace pursuit;

namespace {

PosetPtr cat(const char* name) { return share(catalog(name)); }

Time q(long n, long d = 1) { return make_time(n, d); }

StepPath seq(const PosetPtr& x, std::initializer_list<const char*> names, const Time& t0 = 0) {
  std::vector<Point> v;
  for (auto n : names) v.push_back(x->at(n));
  return StepPath::from_sequence(x, v, t0);
}

// Independent sampler: every breakpoint plus ten interior samples per cell.
std::vector<Time> fine_grid(const StepPath& a, const StepPath& b) {
  std::vector<Time> g = a.times();
  g.insert(g.end(), b.times().begin(), b.times().end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Time> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.push_back(g[i]);
    if (i + 1 < g.size())
      for (int j = 1; j < 10; ++j) out.push_back(g[i] + (g[i + 1] - g[i]) * Time(j, 10));
  }
  return out;
}

NodePtr zeta_v2(const FinitePoset& x) {
  Point a = x.at("a");
  std::vector<NodePtr> cells;
  for (const char* c : {"c0", "c1"}) cells.push_back(rp::concat(x, {rp::constant(x.at(c), 1), rp::instant(a)}));
  return rp::omega(x, cells, a, Side::Left, 1);
}

NodePtr sigma(const FinitePoset& x) {
  auto p = [&](const char* n) { return x.at(n); };
  auto i1 = rp::concat(x, {rp::instant(p("d")), rp::constant(p("f"), q(1, 4)), rp::instant(p("d"))});
  auto i3 = rp::concat(x, {rp::instant(p("b")), rp::constant(p("e"), q(1, 4)), rp::instant(p("d"))});
  return rp::self_similar(x, {{i1, 0}, {nullptr, q(1, 4)}, {i3, 0}, {nullptr, q(1, 4)}}, p("b"), 1);
}

PointSet named(const FinitePoset& x, std::initializer_list<const char*> names) {
  PointSet s;
  for (auto n : names) s.insert(x.at(n));
  return s;
}

}  // namespace

TEST_CASE("step path construction and continuity") {
  auto v2 = cat("ConeV(2)");
  auto g = StepPath(v2, {0, 1, 2}, {v2->at("c0"), v2->at("a"), v2->at("c1")}, {v2->at("c0"), v2->at("c1")});
  CHECK(g.value_at(q(1, 2)) == v2->at("c0"));
  CHECK(g.value_at(1) == v2->at("a"));
  auto c = StepPath::constant(v2, v2->at("a"), 0, 1);
  CHECK(c.intervals() == 1);
  CHECK_THROWS_AS(StepPath(v2, {0, 1, 2}, {v2->at("c0"), v2->at("c0"), v2->at("c1")},
                           {v2->at("c0"), v2->at("c1")}),
                  ContinuityViolation);
  CHECK_THROWS_AS(StepPath(v2, {0, 2, 1}, {v2->at("a"), v2->at("a"), v2->at("a")},
                           {v2->at("a"), v2->at("a")}),
                  NonMonotoneTimes);
}

TEST_CASE("random mutations are rejected exactly when continuity breaks") {
  std::mt19937_64 rng(7);
  for (const auto& name : catalog_sample_names()) {
    auto x = share(catalog(name));
    for (int rep = 0; rep < 40; ++rep) {
      auto g = random_step_path(x, rng, 5);
      auto w = g.breakpoint_values();
      auto v = g.interval_values();
      std::uniform_int_distribution<int> pd(0, x->size() - 1);
      bool mutate_w = rng() % 2;
      if (mutate_w)
        w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)] = pd(rng);
      else
        v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)] = pd(rng);
      bool ok = true;
      for (std::size_t i = 0; i < v.size(); ++i) ok = ok && x->leq(v[i], w[i]) && x->leq(v[i], w[i + 1]);
      if (ok)
        CHECK_NOTHROW(StepPath(x, g.times(), w, v));
      else
        CHECK_THROWS_AS(StepPath(x, g.times(), w, v), ContinuityViolation);
    }
  }
}

TEST_CASE("coincidence of step paths") {
  auto v2 = cat("ConeV(2)");
  auto cop = seq(v2, {"c0", "c0", "a", "c1", "c1"});
  CHECK(coincidence_step(cop, cop) == Time(0));
  auto robber = StepPath::constant(v2, v2->at("c1"), 0, 2);
  CHECK(coincidence_step(cop, robber) == q(3, 2));
  CHECK_FALSE(coincidence_step(StepPath::constant(v2, v2->at("c0"), 0, 2), robber));
  CHECK_THROWS_AS(coincidence_step(cop, StepPath::constant(v2, v2->at("c1"), 0, 3)), DomainMismatch);
}

TEST_CASE("coincidence is symmetric and matches fine sampling") {
  std::mt19937_64 rng(11);
  for (const auto& name : catalog_sample_names()) {
    auto x = share(catalog(name));
    for (int rep = 0; rep < 80; ++rep) {
      auto a = random_step_path(x, rng, 5);
      auto b = random_step_path(x, rng, 5);
      b = reparametrize(b, a.start(), a.end());
      auto ab = coincidence_step(a, b);
      auto ba = coincidence_step(b, a);
      CHECK(ab.has_value() == ba.has_value());
      if (ab) CHECK(a.value_at(*ab) == b.value_at(*ab));
      bool sampled = false;
      for (const auto& t : fine_grid(a, b)) sampled = sampled || a.value_at(t) == b.value_at(t);
      CHECK(sampled == ab.has_value());
    }
  }
}

TEST_CASE("map, splice, reverse, reparametrize") {
  auto pc = cat("Pseudocircle");
  auto g = seq(pc, {"a", "a", "c", "b", "b"});
  CHECK(map_path(MonotoneMap::identity(pc), g) == g);
  auto rot = find_fixed_point_free_map(pc).map;
  REQUIRE(rot);
  auto h = map_path(*rot, g);
  for (int i = 0; i < 5; ++i) {
    Time t = q(i, 2);
    CHECK(h.value_at(t) == (*rot)(g.value_at(t)));
    CHECK(h.value_at(t) != g.value_at(t));
  }
  CHECK(reverse(reverse(g)) == g);
  auto loop = splice({g, reparametrize(reverse(g), 2, 4)});
  CHECK(loop.start() == 0);
  CHECK(loop.end() == 4);
  CHECK(loop.value_at(0) == loop.value_at(4));
  auto r = reparametrize(StepPath::constant(pc, pc->at("a"), 0, 1), 3, 5);
  CHECK(r.end() - r.start() == 2);
  CHECK_THROWS_AS(splice({g, StepPath::constant(pc, pc->at("d"), 2, 3)}), ContinuityViolation);
}

TEST_CASE("minimal admissible subdivisions") {
  auto x = cat("S30op");
  OpenCover cover{{"U1", "U2", "U3"}, {x->down(x->at("1")), x->down(x->at("2")), x->down(x->at("3"))}};
  auto g = seq(x, {"1'", "1'", "1", "0", "2", "2'", "2'"});
  auto s = minimal_admissible_subdivision(g, cover);
  REQUIRE(s.size() == 2);
  CHECK(s.cuts == std::vector<Time>{0, q(3, 2), 3});
  CHECK(s.members == std::vector<int>{0, 1});
  CHECK(is_minimal_admissible(g, cover, s));

  OpenCover whole{{"X"}, {x->all()}};
  CHECK(minimal_admissible_subdivision(g, whole).size() == 1);

  auto s21 = cat("S21");
  OpenCover c21{{"U0", "U1'", "U2'"},
                {s21->down(s21->at("0")), s21->down(s21->at("1'")), s21->down(s21->at("2'"))}};
  auto osc = seq(s21, {"1'", "1'", "1'", "1", "0", "2", "2'", "2", "0", "1", "1'", "1'", "1'"});
  auto so = minimal_admissible_subdivision(osc, c21);
  CHECK(is_minimal_admissible(osc, c21, so));
  for (int i = 0; i + 1 < so.size(); ++i) CHECK(so.members[i] != so.members[i + 1]);

  std::mt19937_64 rng(3);
  for (const auto& name : catalog_sample_names()) {
    auto y = share(catalog(name));
    OpenCover c;
    for (Point p : y->maximal()) {
      c.names.push_back(y->name(p));
      c.members.push_back(y->down(p));
    }
    for (int rep = 0; rep < 30; ++rep) {
      auto h = random_step_path(y, rng, 6);
      CHECK(is_minimal_admissible(h, c, minimal_admissible_subdivision(h, c)));
    }
  }
}

TEST_CASE("regular path nodes validate continuity") {
  auto v2 = cat("ConeV(2)");
  const auto& x = *v2;
  CHECK_THROWS_AS(rp::concat(x, {rp::constant(x.at("c0"), 1), rp::constant(x.at("c1"), 1)}), ContinuityViolation);
  CHECK_THROWS_AS(rp::concat(x, {rp::instant(x.at("c0")), rp::constant(x.at("c1"), 1)}), ContinuityViolation);
  CHECK_THROWS_AS(rp::omega(x, {rp::concat(x, {rp::constant(x.at("a"), 1), rp::instant(x.at("a"))})},
                            x.at("c0"), Side::Left, 1),
                  ContinuityViolation);
  CHECK_THROWS_AS(RegularPath(v2, rp::constant(x.at("a"), 1)), ContinuityViolation);
  auto z = RegularPath(v2, zeta_v2(x));
  CHECK(z.value_at(0) == x.at("a"));
  CHECK(z.value_at(q(1, 2)) == x.at("a"));
  CHECK(z.value_at(q(1, 3)) == x.at("a"));
  CHECK(z.value_at(q(3, 4)) == x.at("c0"));
  CHECK(z.value_at(q(5, 12)) == x.at("c1"));
  CHECK(z.value_at(1) == x.at("a"));
}

TEST_CASE("value profiles") {
  auto v2 = cat("ConeV(2)");
  auto z = RegularPath(v2, zeta_v2(*v2));
  auto p = z.value_profile(0, q(1, 100));
  CHECK(p.positive == named(*v2, {"c0", "c1"}));
  CHECK(p.dense == named(*v2, {"a"}));
  CHECK(p.instants.empty());
  auto near = z.value_profile(q(1, 3) - q(1, 1000), q(1, 3) + q(1, 1000));
  CHECK(near.instants == named(*v2, {"a"}));
  CHECK(near.dense.empty());

  auto c = RegularPath(v2, rp::concat(*v2, {rp::instant(v2->at("a")), rp::constant(v2->at("c0"), 1),
                                             rp::instant(v2->at("a"))}));
  CHECK(c.value_profile(q(1, 4), q(1, 2)).positive == named(*v2, {"c0"}));

  auto f6 = cat("Fractal6");
  auto s = RegularPath(f6, sigma(*f6));
  auto ps = s.value_profile(q(1, 4), q(1, 2));
  CHECK(ps.positive == named(*f6, {"e", "f"}));
  CHECK(ps.dense == named(*f6, {"d", "b"}));
  CHECK(s.value_profile(0, q(1, 4)).all() == named(*f6, {"f"}));
  CHECK(s.value_profile(q(3, 10), q(1, 3)).positive.contains(f6->at("f")));

  // Monotonicity under window growth.
  std::vector<Time> ends;
  for (int i = 0; i <= 24; ++i) ends.push_back(q(i, 24));
  for (const RegularPath* g : {&z, &s})
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        auto inner = g->value_profile(ends[i], ends[j]);
        for (std::size_t a = 0; a <= i; ++a)
          for (std::size_t b = j; b < ends.size(); b += 3) {
            auto outer = g->value_profile(ends[a], ends[b]);
            CHECK(inner.positive.subset_of(outer.positive));
            CHECK((inner.instants | inner.dense).subset_of(outer.instants | outer.dense));
            CHECK(inner.dense.subset_of(outer.dense));
          }
      }
}

TEST_CASE("fractal path values") {
  auto f6 = cat("Fractal6");
  auto s = RegularPath(f6, sigma(*f6));
  CHECK(s.value_at(0) == f6->at("d"));
  CHECK(s.value_at(1) == f6->at("b"));
  CHECK(s.value_at(q(1, 3)) == f6->at("b"));
  CHECK(s.value_at(q(1, 4)) == f6->at("d"));
  CHECK(s.value_at(q(1, 2)) == f6->at("b"));
  CHECK(s.value_at(q(1, 8)) == f6->at("f"));
  CHECK(s.value_at(q(5, 8)) == f6->at("e"));
  CHECK(s.value_at(q(5, 16)) == f6->at("d"));
  CHECK(s.value_at(q(9, 32)) == f6->at("f"));
  auto u = unroll_detailed(s, 2);
  REQUIRE(u.replaced.size() == 4);
  for (auto& [a, b] : u.replaced) CHECK(b - a == q(1, 16));
  auto u1 = unroll(s, 1);
  std::vector<std::string> vals;
  for (Point p : u1.value_sequence()) vals.push_back(f6->name(p));
  CHECK(vals == std::vector<std::string>{"d", "f", "d", "e", "b", "e", "d", "e", "b"});
}

TEST_CASE("fractal property (ii) on unrollings") {
  auto f6 = cat("Fractal6");
  auto s = RegularPath(f6, sigma(*f6));
  const Point b = f6->at("b"), e = f6->at("e"), f = f6->at("f");
  for (int n = 1; n <= 6; ++n) {
    auto u = unroll_detailed(s, n);
    const auto& g = u.path;
    auto inside_replaced = [&](const Time& t) {
      for (auto& [l, r] : u.replaced)
        if (l < t && t < r) return true;
      return false;
    };
    // Represented pieces: intervals and breakpoints outside filler windows.
    std::vector<std::pair<Time, Point>> rep;
    for (int i = 0; i <= g.intervals(); ++i) {
      if (!inside_replaced(g.time(i))) rep.emplace_back(g.time(i), g.breakpoint(i));
      if (i < g.intervals()) {
        Time m = midpoint(g.time(i), g.time(i + 1));
        if (!inside_replaced(m)) rep.emplace_back(m, g.interval(i));
      }
    }
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (rep[i].second != f) continue;
      bool seen_b = false;
      for (std::size_t j = i + 1; j < rep.size(); ++j) {
        if (rep[j].second == b) seen_b = true;
        if (rep[j].second == e) CHECK(seen_b);
      }
    }
    CHECK(s.value_profile(rep.front().first, rep.back().first + q(1, 1 << 20)).all().contains(b));
  }
}

TEST_CASE("unroll agrees with the regular path outside replaced windows") {
  auto f6 = cat("Fractal6");
  auto v2 = cat("ConeV(2)");
  std::vector<RegularPath> paths{RegularPath(f6, sigma(*f6)), RegularPath(v2, zeta_v2(*v2)),
                                 reverse(RegularPath(v2, zeta_v2(*v2)))};
  auto v3 = cat("ConeV(3)");
  {
    std::vector<NodePtr> cells;
    for (const char* c : {"c0", "c1", "c2"})
      cells.push_back(rp::concat(*v3, {rp::instant(v3->at("a")), rp::constant(v3->at(c), 1)}));
    paths.emplace_back(v3, rp::concat(*v3, {rp::omega(*v3, cells, v3->at("a"), Side::Right, 2),
                                             rp::constant(v3->at("c2"), 1), rp::instant(v3->at("a"))}));
  }
  for (const auto& g : paths)
    for (int k = 1; k <= 5; ++k) {
      auto u = unroll_detailed(g, k);
      CHECK(u.path.start() == g.start());
      CHECK(u.path.end() == g.end());
      std::vector<Time> grid;
      for (int i = 0; i <= u.path.intervals(); ++i) {
        grid.push_back(u.path.time(i));
        if (i < u.path.intervals()) grid.push_back(midpoint(u.path.time(i), u.path.time(i + 1)));
      }
      for (const auto& t : grid) {
        bool replaced = false;
        for (auto& [l, r] : u.replaced) replaced = replaced || (l < t && t < r);
        if (!replaced) CHECK(u.path.value_at(t) == g.value_at(t));
      }
    }
}

TEST_CASE("reversal, mapping and rescaling of regular paths") {
  auto v2 = cat("ConeV(2)");
  auto z = RegularPath(v2, zeta_v2(*v2));
  auto r = reverse(z);
  for (int i = 0; i <= 40; ++i) {
    Time t = q(i, 40);
    CHECK(r.value_at(t) == z.value_at(1 - t));
  }
  auto s = z.rescaled(2, 5);
  CHECK(s.start() == 2);
  CHECK(s.end() == 5);
  CHECK(s.value_at(2 + 3 * q(3, 4)) == z.value_at(q(3, 4)));
  std::vector<Point> swap(v2->size());
  for (Point p = 0; p < v2->size(); ++p) swap[p] = p;
  std::swap(swap[v2->at("c0")], swap[v2->at("c1")]);
  MonotoneMap sw{v2, v2, swap};
  auto m = map_path(sw, z);
  CHECK(m.value_at(q(3, 4)) == v2->at("c1"));
}

TEST_CASE("regular coincidence matches step coincidence on step paths") {
  std::mt19937_64 rng(5);
  for (const auto& name : catalog_sample_names()) {
    auto x = share(catalog(name));
    for (int rep = 0; rep < 40; ++rep) {
      auto a = random_step_path(x, rng, 4);
      auto b = reparametrize(random_step_path(x, rng, 4), a.start(), a.end());
      auto g = RegularPath::from_step_path(a);
      CHECK(coincidence_regular_step(g, b).has_value() == coincidence_step(a, b).has_value());
    }
  }
  auto v3 = cat("ConeV(3)");
  std::vector<NodePtr> cells;
  for (const char* c : {"c0", "c1", "c2"})
    cells.push_back(rp::concat(*v3, {rp::constant(v3->at(c), 1), rp::instant(v3->at("a"))}));
  auto z3 = RegularPath(v3, rp::omega(*v3, cells, v3->at("a"), Side::Left, 1));
  auto hit = coincidence_regular_step(z3, StepPath::constant(v3, v3->at("c2"), 0, 1));
  REQUIRE(hit);
  CHECK(hit->from == 0);
  CHECK(hit->to == 1);
  CHECK(coincidence_regular_step(RegularPath::from_step_path(StepPath::constant(v3, v3->at("a"), 0, 1)),
                                 StepPath::constant(v3, v3->at("a"), 0, 1)));
}
