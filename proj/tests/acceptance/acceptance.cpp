// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/complexes.hpp"
#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/extrema.hpp"
#include "poset_pursuit/responders.hpp"
#include "poset_pursuit/strategies.hpp"
#include "poset_pursuit/verifier.hpp"

using namespace pursuit;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

PosetPtr cat(const std::string& name) { return share(catalog(name)); }

// Every continuous value sequence w0 v1 w1 ... vk wk with k intervals.
void for_each_sequence(const FinitePoset& x, int k, const std::function<void(const std::vector<Point>&)>& f) {
  std::vector<Point> seq;
  std::function<void()> rec = [&] {
    if (static_cast<int>(seq.size()) == 2 * k + 1) {
      f(seq);
      return;
    }
    if (seq.empty()) {
      for (Point w = 0; w < x.size(); ++w) {
        seq.push_back(w);
        rec();
        seq.pop_back();
      }
      return;
    }
    Point w = seq.back();
    for (Point v : x.down(w)) {
      for (Point w2 : x.up(v)) {
        seq.push_back(v);
        seq.push_back(w2);
        rec();
        seq.pop_back();
        seq.pop_back();
      }
    }
  };
  rec();
}

Result catalog_verdicts() {
  Result r;
  std::vector<std::pair<std::string, Outcome>> expect{
      {"S21", Outcome::RobberWins},  {"S30op", Outcome::RobberWins},        {"Yoke", Outcome::RobberWins},
      {"S21op", Outcome::CopWins},   {"Fractal6", Outcome::CopWins},        {"Pseudocircle", Outcome::RobberWins}};
  for (int m = 1; m <= 6; ++m) {
    expect.emplace_back("ConeV(" + std::to_string(m) + ")", Outcome::CopWins);
    expect.emplace_back("ConeOpW(" + std::to_string(m) + ")", Outcome::CopWins);
  }
  for (int l = 1; l <= 8; ++l) expect.emplace_back("Fence(" + std::to_string(l) + ")", Outcome::CopWins);
  int bad = 0;
  for (auto& [name, outcome] : expect) {
    Verdict v = classify(cat(name));
    if (v.outcome != outcome) {
      ++bad;
      r.detail += name + " gave " + to_string(v.outcome) + "; ";
    }
  }
  r.pass = bad == 0;
  r.detail += std::to_string(expect.size()) + " spaces, " + std::to_string(bad) + " mismatches";
  return r;
}

Result dp_exactness() {
  long paths = 0, discrepancies = 0;
  int posets = 0;
  for (int n = 1; n <= 4; ++n)
    for (auto& poset : enumerate_posets(n)) {
      ++posets;
      auto x = share(poset);
      EnumeratedEscape reference(*x, 2);
      for (int k = 1; k <= 2; ++k)
        for_each_sequence(*x, k, [&](const std::vector<Point>& seq) {
          auto cop = StepPath::from_sequence(x, seq);
          ++paths;
          if (escape_exists(*x, cop).has_value() != reference(cop)) ++discrepancies;
        });
    }
  return {discrepancies == 0, std::to_string(posets) + " posets, " + std::to_string(paths) + " cop paths, " +
                                  std::to_string(discrepancies) + " discrepancies"};
}

Result cone_strategies() {
  auto v2 = cat("ConeV(2)");
  auto walk = StepPath::from_sequence(v2, {v2->at("c0"), v2->at("c0"), v2->at("a"), v2->at("c1"), v2->at("c1")});
  bool strong = is_strong_strategy(walk).strong;
  auto v3 = cat("ConeV(3)");
  long paths = 0, caught = 0;
  for (int k = 1; k <= 4; ++k)
    for_each_sequence(*v3, k, [&](const std::vector<Point>& seq) {
      ++paths;
      if (!escape_exists(*v3, StepPath::from_sequence(v3, seq))) ++caught;
    });
  return {strong && caught == 0, std::string("c0->a->c1 on ConeV(2) ") + (strong ? "is" : "is NOT") +
                                     " strong; ConeV(3): " + std::to_string(paths) + " cop paths, " +
                                     std::to_string(caught) + " without escape"};
}

Result limit_strategies() {
  int checked = 0, failures = 0;
  std::string first;
  for (int n = 1; n <= 5; ++n)
    for (auto& poset : enumerate_posets(n)) {
      if (!poset.maximum()) continue;
      auto x = share(poset);
      ++checked;
      auto rep = bounded_escape_search(max_strategy(x), 3, 5);
      if (rep.escape) {
        if (failures++ == 0) first = x->describe();
      }
    }
  auto v3 = cat("ConeV(3)");
  auto zeta = max_strategy(v3);
  int refuted = 0;
  for (int k = 1; k <= 5; ++k) refuted += escape_exists(*v3, unroll(zeta, k)).has_value();
  std::string detail = std::to_string(checked) + " spaces with maximum, " + std::to_string(failures) +
                       " escapes at B=3 k=5; ConeV(3) unrollings refuted " + std::to_string(refuted) + "/5";
  if (!first.empty()) detail += "; first escape on " + first;
  return {failures == 0 && refuted == 5, detail};
}

Result extrema_reduction() {
  std::mt19937_64 rng(5);
  long samples = 0, bad = 0, responded = 0;
  std::vector<PosetPtr> spaces;
  for (auto& name : catalog_sample_names()) spaces.push_back(cat(name));
  {
    FinitePoset s21 = catalog("S21");
    auto names = s21.names();
    names.push_back("m");
    auto rel = s21.relation_names();
    rel.emplace_back("3", "m");
    rel.emplace_back("m", "0");
    spaces.push_back(share(FinitePoset(names, rel)));
    spaces.push_back(share(FinitePoset({"a", "b", "c", "d", "m", "t"},
                                       {{"a", "m"}, {"m", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"m", "t"}})));
  }
  for (auto& x : spaces) {
    auto ext = extrema(*x);
    auto inner_verdict = classify(share(ext.space));
    ResponderPtr composed;
    if (inner_verdict.robber) composed = make_extrema_responder(x, inner_verdict.robber);
    for (int i = 0; i < 500; ++i) {
      auto g = random_step_path(x, rng, 6);
      ++samples;
      auto back = project_to_extrema(x, g).in_parent(x);
      bool ok = back.start() == g.start() && back.end() == g.end();
      for (int j = 0; ok && j <= g.intervals(); ++j) {
        ok &= x->is_extremal(back.breakpoint(j));
        if (x->is_extremal(g.breakpoint(j))) ok &= back.breakpoint(j) == g.breakpoint(j);
        if (j < g.intervals()) {
          ok &= x->is_extremal(back.interval(j));
          if (x->is_extremal(g.interval(j))) ok &= back.interval(j) == g.interval(j);
        }
      }
      if (composed && !g.tail()) {
        ++responded;
        ok &= !coincidence_step(g, composed->respond(g)).has_value();
      }
      bad += !ok;
    }
  }
  return {bad == 0, std::to_string(spaces.size()) + " spaces, " + std::to_string(samples) + " samples, " +
                        std::to_string(responded) + " composed replies, " + std::to_string(bad) + " failures"};
}

Result lifting() {
  long samples = 0, bad = 0;
  for (auto& name : catalog_sample_names()) {
    auto x = cat(name);
    auto k = std::make_shared<const SimplicialComplex>(order_complex(*x));
    std::mt19937_64 rng(std::hash<std::string>{}(name));
    for (int i = 0; i < 1000; ++i) {
      auto g = random_step_path(x, rng, 6);
      ++samples;
      auto back = mu_project(x, lift_step_path(k, g));
      bad += !(back.same_function(g) && back.normalized() == g.normalized());
    }
  }
  return {bad == 0, std::to_string(samples) + " samples, " + std::to_string(bad) + " mismatches"};
}

Result height1_closure() {
  int spaces = 0, unknown = 0, invalid = 0;
  std::string first;
  ValidationOptions opts{.budget = 3, .unroll = 4, .robber_samples = 200, .seed = 1};
  for (int n = 1; n <= 5; ++n)
    for (auto& poset : enumerate_posets(n)) {
      if (poset.height() != 1 || !is_connected(poset)) continue;
      ++spaces;
      auto v = classify(share(poset));
      if (v.outcome == Outcome::Unknown) {
        ++unknown;
        continue;
      }
      if (auto why = validate_certificate(v, opts)) {
        if (invalid++ == 0) first = poset.describe() + ": " + *why;
      }
    }
  std::string detail = std::to_string(spaces) + " connected height-1 spaces, " + std::to_string(unknown) +
                       " unknown, " + std::to_string(invalid) + " invalid certificates";
  if (!first.empty()) detail += "; " + first;
  return {unknown == 0 && invalid == 0, detail};
}

// Pieces of an unrolling that lie outside the filler windows, in time order.
struct Represented {
  StepPath path;
  std::vector<std::pair<Time, Time>> windows;
  bool in_window(const Time& t) const {
    for (auto& [l, r] : windows)
      if (l < t && t < r) return true;
    return false;
  }
};

Result fractal_suite() {
  auto f6 = cat("Fractal6");
  const Point b = f6->at("b"), d = f6->at("d"), e = f6->at("e"), f = f6->at("f");
  RegularPath sigma(f6, fractal_sigma(*f6));
  int failures = 0;
  std::string why;
  auto fail = [&](const std::string& s) {
    if (failures++ == 0) why = s;
  };
  auto rep_at = [&](int n) {
    auto u = unroll_detailed(sigma, n);
    return Represented{u.path, u.replaced};
  };
  for (int n = 1; n <= 6; ++n) {
    Represented r = rep_at(n), deep = rep_at(n + 2);
    const StepPath& g = r.path;
    auto is_window_end = [&](const Time& t) {
      for (auto& [l, rr] : r.windows)
        if (t == l || t == rr) return true;
      return false;
    };
    // (i): b-points border an undefined window, and every window contains an
    // e-interval, a d-point and an f-interval in that order two stages later.
    for (int i = 0; i <= g.intervals(); ++i)
      if (g.breakpoint(i) == b && !r.in_window(g.time(i)) && !is_window_end(g.time(i)) && g.time(i) != g.end())
        fail("stage " + std::to_string(n) + ": isolated b at " + to_string(g.time(i)));
    for (auto& [l, rr] : r.windows) {
      bool pattern = false;
      const StepPath& h = deep.path;
      for (int i = 0; i + 1 < h.intervals() && !pattern; ++i)
        pattern = l <= h.time(i) && h.time(i + 2) <= rr && h.interval(i) == e && h.breakpoint(i + 1) == d &&
                  h.interval(i + 1) == f;
      if (!pattern) fail("stage " + std::to_string(n) + ": no e,d,f pattern in a window");
    }
    // (ii): between a represented f and a later represented e there is a b.
    std::vector<Point> seq;
    for (int i = 0; i <= g.intervals(); ++i) {
      if (!r.in_window(g.time(i))) seq.push_back(g.breakpoint(i));
      if (i < g.intervals() && !r.in_window(midpoint(g.time(i), g.time(i + 1)))) seq.push_back(g.interval(i));
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] != f) continue;
      bool seen_b = false;
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        seen_b |= seq[j] == b;
        if (seq[j] == e && !seen_b) fail("stage " + std::to_string(n) + ": f then e without b");
      }
    }
    // (iii): every represented breakpoint touches an e- or f-interval, and
    // every window gains e or f one stage later.
    for (int i = 0; i <= g.intervals(); ++i) {
      if (r.in_window(g.time(i))) continue;
      bool near = false;
      for (int j : {i - 1, i})
        if (j >= 0 && j < g.intervals() && !r.in_window(midpoint(g.time(j), g.time(j + 1))))
          near |= g.interval(j) == e || g.interval(j) == f;
      if (!near && g.breakpoint(i) != b)
        fail("stage " + std::to_string(n) + ": no e/f next to " + to_string(g.time(i)));
    }
    Represented next = rep_at(n + 1);
    for (auto& [l, rr] : r.windows) {
      bool found = false;
      for (int i = 0; i < next.path.intervals() && !found; ++i) {
        Time m = midpoint(next.path.time(i), next.path.time(i + 1));
        found = l < m && m < rr && !next.in_window(m) && (next.path.interval(i) == e || next.path.interval(i) == f);
      }
      if (!found) fail("stage " + std::to_string(n) + ": window without e/f");
    }
  }
  auto gamma = fractal_strategy(f6);
  auto grid = canonical_grid(gamma, 3);
  bool third = std::find(grid.begin(), grid.end(), make_time(1, 3)) != grid.end();
  if (!third) fail("grid misses 1/3");
  auto search = grid_escape_search(gamma, grid, 4);
  if (search) fail("robber escape found: " + search->describe());
  std::string detail = "stages 1..6 checked, grid of " + std::to_string(grid.size()) +
                       " times with 1/3, robbers with <= 4 breakpoints: " + (search ? "escape" : "all caught");
  if (failures) detail += "; " + why;
  return {failures == 0, detail};
}

Result galleries() {
  std::vector<std::pair<std::string, std::string>> expect{
      {"gallery-3", "thief"}, {"gallery-1", "watcher"}, {"segment", "watcher"}};
  int bad = 0;
  std::string detail;
  for (auto& [name, winner] : expect) {
    auto w = watcher_decide(gallery(name)).winner();
    detail += name + " -> " + w + "; ";
    bad += w != winner;
  }
  return {bad == 0, detail + std::to_string(bad) + " mismatches"};
}

Result consistency() {
  auto rep = cross_validate(5);
  return {rep.contradictions == 0 && rep.posets == 63, rep.summary()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"catalog verdicts", catalog_verdicts},
      {"escape DP agrees with enumeration", dp_exactness},
      {"finite cop walks on cones", cone_strategies},
      {"limit strategies on spaces with a maximum", limit_strategies},
      {"extrema reduction", extrema_reduction},
      {"lifting to the order complex", lifting},
      {"height-1 classification closure", height1_closure},
      {"self-similar strategy", fractal_suite},
      {"gallery reduction", galleries},
      {"consistency harness", consistency},
  };
  int failed = 0, index = 0;
  for (auto& [title, run] : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !r.pass;
    std::printf("criterion %2d: %s  %s (%s) [%.2fs]\n", index, r.pass ? "PASS" : "FAIL", title.c_str(),
                r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
