#include "poset_pursuit/extrema.hpp"

#include "poset_pursuit/errors.hpp"

namespace pursuit {

StepPath ReducedPath::in_parent(const PosetPtr& parent) const {
  std::vector<Point> w, v;
  for (Point p : path.breakpoint_values()) w.push_back(to_parent[p]);
  for (Point p : path.interval_values()) v.push_back(to_parent[p]);
  std::optional<Point> tail;
  if (path.tail()) tail = to_parent[*path.tail()];
  return StepPath(parent, path.times(), w, v, tail);
}

bool eliminable(const FinitePoset& x, Point a) {
  if (x.is_extremal(a)) return false;
  return x.upper_covers(a).subset_of(x.maximal());
}

namespace {

// Pieces of a step path: 2i is breakpoint i, 2i+1 the interval after it.
Point piece(const StepPath& g, int p) { return p % 2 == 0 ? g.breakpoint(p / 2) : g.interval(p / 2); }
Time piece_start(const StepPath& g, int p) { return g.time(p / 2); }
Time piece_end(const StepPath& g, int p) { return p % 2 == 0 ? g.time(p / 2) : g.time(p / 2 + 1); }
Time piece_mid(const StepPath& g, int p) {
  return p % 2 == 0 ? g.time(p / 2) : midpoint(g.time(p / 2), g.time(p / 2 + 1));
}

}  // namespace

ReducedPath eliminate_point(const PosetPtr& xp, Point a, const StepPath& g, EliminationPlan* plan_out) {
  const FinitePoset& x = *xp;
  if (!(g.space() == x)) throw PreconditionError("path does not live in the given space");
  if (!eliminable(x, a))
    throw PreconditionError("point " + x.name(a) + " is extremal or has a non-maximal cover");

  EliminationPlan plan;
  plan.a = a;
  plan.f_hat = x.up(a) - PointSet::single(a);
  plan.b = *(x.down(a) & x.minimal()).first();

  const int last = 2 * g.intervals();
  std::vector<Point> val(last + 1);
  for (int p = 0; p <= last; ++p) val[p] = piece(g, p);

  // Margins between consecutive occurrences of different points of F̂_a.
  int prev = -1;
  for (int p = 0; p <= last; ++p) {
    if (!plan.f_hat.contains(val[p])) continue;
    if (prev >= 0 && val[prev] != val[p]) {
      std::optional<Time> t;
      for (int q = prev + 1; q < p && !t; ++q)
        if (val[q] != a) t = piece_mid(g, q);
      if (!t) t = midpoint(piece_end(g, prev), piece_start(g, p));
      plan.margins.push_back({*t, val[prev], val[p]});
    }
    prev = p;
  }
  PointSet seen;
  for (int p = 0; p <= last; ++p)
    if (plan.f_hat.contains(val[p])) seen.insert(val[p]);

  auto region_owner = [&](const Time& t) -> Point {
    if (plan.margins.empty()) return seen.empty() ? *plan.f_hat.first() : *seen.first();
    Point owner = plan.margins.front().right_of;
    for (const auto& m : plan.margins)
      if (m.t < t) owner = m.left_of;
    return owner;
  };

  std::vector<Point> out = val;
  int p = 0;
  while (p <= last) {
    if (val[p] != a) {
      ++p;
      continue;
    }
    int q = p;
    while (q + 1 <= last && val[q + 1] == a) ++q;
    Run r{piece_start(g, p), piece_end(g, q), p % 2 == 0, q % 2 == 0};
    bool open = !r.from_closed && !r.to_closed;
    Point rep = open ? plan.b : region_owner(piece_mid(g, p));
    for (int s = p; s <= q; ++s) out[s] = rep;
    plan.components.push_back(r);
    plan.open_type.push_back(open);
    plan.replacement.push_back(rep);
    p = q + 1;
  }

  Subspace sub = induced(x, x.all() - PointSet::single(a));
  std::vector<Point> w, v;
  for (int s = 0; s <= last; ++s) (s % 2 == 0 ? w : v).push_back(sub.from_parent[out[s]]);
  std::optional<Point> tail;
  if (g.tail()) tail = sub.from_parent[*g.tail() == a ? out[last] : *g.tail()];
  auto space = share(sub.space);
  StepPath path(space, g.times(), w, v, tail);
  if (plan_out) *plan_out = std::move(plan);
  return {space, sub.to_parent, std::move(path)};
}

ReducedPath project_to_extrema(const PosetPtr& x, const StepPath& g) {
  ReducedPath cur{x, {}, g};
  for (Point p = 0; p < x->size(); ++p) cur.to_parent.push_back(p);
  for (;;) {
    const FinitePoset& s = *cur.space;
    Point pick = -1;
    for (Point p = 0; p < s.size(); ++p) {
      if (s.is_extremal(p)) continue;
      if (pick < 0 || s.rank(p) > s.rank(pick) ||
          (s.rank(p) == s.rank(pick) && s.name(p) < s.name(pick)))
        pick = p;
    }
    if (pick < 0) return cur;
    ReducedPath next = eliminate_point(cur.space, pick, cur.path);
    for (auto& q : next.to_parent) q = cur.to_parent[q];
    cur = std::move(next);
  }
}

}  // namespace pursuit
