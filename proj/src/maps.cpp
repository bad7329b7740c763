#include "poset_pursuit/maps.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

bool MonotoneMap::is_monotone() const {
  if (!domain || !codomain || static_cast<int>(image.size()) != domain->size()) return false;
  for (Point p : image)
    if (p < 0 || p >= codomain->size()) return false;
  for (auto [lo, hi] : domain->covers())
    if (!codomain->leq(image[lo], image[hi])) return false;
  return true;
}

bool MonotoneMap::is_retraction() const {
  if (!is_self_map() || !is_monotone()) return false;
  for (Point p = 0; p < domain->size(); ++p)
    if (image[image[p]] != image[p]) return false;
  return true;
}

bool MonotoneMap::is_fixed_point_free() const {
  if (!is_self_map()) return false;
  for (Point p = 0; p < domain->size(); ++p)
    if (image[p] == p) return false;
  return true;
}

PointSet MonotoneMap::image_set() const {
  PointSet s;
  for (Point p : image) s.insert(p);
  return s;
}

MonotoneMap MonotoneMap::identity(PosetPtr x) {
  MonotoneMap m{x, x, std::vector<Point>(x->size())};
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

MonotoneMap MonotoneMap::after(const MonotoneMap& g) const {
  MonotoneMap m{g.domain, codomain, {}};
  for (Point p : g.image) m.image.push_back(image.at(p));
  return m;
}

bool Embedding::is_valid() const {
  if (!source || !target || static_cast<int>(map.size()) != source->size()) return false;
  if (image().size() != source->size()) return false;
  for (Point s = 0; s < source->size(); ++s)
    for (Point u = 0; u < source->size(); ++u)
      if (source->leq(s, u) != target->leq(map[s], map[u])) return false;
  return true;
}

PointSet Embedding::image() const {
  PointSet s;
  for (Point p : map) s.insert(p);
  return s;
}

namespace {

struct EmbeddingSearch {
  const FinitePoset& t;
  const FinitePoset& x;
  const EmbeddingConstraints& c;
  std::vector<Point> order;
  std::vector<Point> assign;
  std::vector<int> pin;  // -1 none, 0 maximal, 1 minimal
  PointSet used;

  bool fits(Point s, Point y) const {
    if (pin[s] == 0 && !x.maximal().contains(y)) return false;
    if (pin[s] == 1 && !x.minimal().contains(y)) return false;
    if (t.down(s).size() > x.down(y).size() || t.up(s).size() > x.up(y).size()) return false;
    for (Point u = 0; u < t.size(); ++u) {
      if (assign[u] < 0) continue;
      if (t.leq(s, u) != x.leq(y, assign[u]) || t.leq(u, s) != x.leq(assign[u], y)) return false;
    }
    return true;
  }

  bool finish_ok() const {
    for (auto [p, q] : c.no_common_upper_bound)
      if (x.up(assign[p]).intersects(x.up(assign[q]))) return false;
    return true;
  }

  bool run(std::size_t depth) {
    if (depth == order.size()) return finish_ok();
    Point s = order[depth];
    for (Point y = 0; y < x.size(); ++y) {
      if (used.contains(y) || !fits(s, y)) continue;
      assign[s] = y;
      used.insert(y);
      if (run(depth + 1)) return true;
      used.erase(y);
      assign[s] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<Embedding> find_order_embedding(PosetPtr t, PosetPtr x, const EmbeddingConstraints& c) {
  if (t->size() > x->size()) return std::nullopt;
  EmbeddingSearch s{*t, *x, c, {}, std::vector<Point>(t->size(), -1), std::vector<int>(t->size(), -1), {}};
  for (auto [p, kind] : c.pinned) s.pin.at(p) = kind == Extremality::Maximal ? 0 : 1;
  s.order.resize(t->size());
  std::iota(s.order.begin(), s.order.end(), 0);
  // Most constrained points first: high degree in the comparability graph.
  std::stable_sort(s.order.begin(), s.order.end(), [&](Point a, Point b) {
    return t->down(a).size() + t->up(a).size() > t->down(b).size() + t->up(b).size();
  });
  if (!s.run(0)) return std::nullopt;
  return Embedding{t, x, s.assign};
}

std::optional<Embedding> is_isomorphic(PosetPtr x, PosetPtr y) {
  if (x->size() != y->size() || x->covers().size() != y->covers().size() ||
      x->height() != y->height() || x->maximal().size() != y->maximal().size() ||
      x->minimal().size() != y->minimal().size())
    return std::nullopt;
  return find_order_embedding(x, y);
}

std::optional<std::vector<Point>> has_cycle_height1(const FinitePoset& x) {
  if (x.height() > 1) throw PreconditionError("cycle search requires height at most 1");
  std::optional<std::vector<Point>> best;
  for (auto [lo, hi] : x.covers()) {
    // Shortest path lo -> hi avoiding the edge itself.
    std::vector<int> prev(x.size(), -2);
    std::deque<Point> q{lo};
    prev[lo] = -1;
    while (!q.empty() && prev[hi] == -2) {
      Point p = q.front();
      q.pop_front();
      for (Point nb : x.hasse_neighbours(p)) {
        if ((p == lo && nb == hi) || prev[nb] != -2) continue;
        prev[nb] = p;
        q.push_back(nb);
      }
    }
    if (prev[hi] == -2) continue;
    std::vector<Point> cyc;
    for (int p = hi; p != -1; p = prev[p]) cyc.push_back(p);
    std::reverse(cyc.begin(), cyc.end());  // lo ... hi, closing edge hi - lo
    if (!best || cyc.size() < best->size()) best = cyc;
  }
  return best;
}

MonotoneMap cycle_retraction(PosetPtr xp, const std::vector<Point>& cycle) {
  const FinitePoset& x = *xp;
  const int n = static_cast<int>(cycle.size());
  if (n < 4) throw PreconditionError("cycle must have at least four points");
  auto shortest = has_cycle_height1(x);
  if (!shortest || static_cast<int>(shortest->size()) < n)
    throw PreconditionError("cycle is not of minimal length");
  Point x0 = cycle.front(), xl = cycle.back();
  std::vector<int> dist(x.size(), -1);
  std::deque<Point> q{x0};
  dist[x0] = 0;
  while (!q.empty()) {
    Point p = q.front();
    q.pop_front();
    for (Point nb : x.hasse_neighbours(p)) {
      if ((p == x0 && nb == xl) || (p == xl && nb == x0) || dist[nb] >= 0) continue;
      dist[nb] = dist[p] + 1;
      q.push_back(nb);
    }
  }
  MonotoneMap r{xp, xp, std::vector<Point>(x.size())};
  for (Point p = 0; p < x.size(); ++p) {
    if (dist[p] < 0) throw PreconditionError("space must be connected");
    r.image[p] = cycle[std::min(n - 1, dist[p])];
  }
  if (!r.is_retraction()) throw PreconditionError("cycle is not of minimal length");
  return r;
}

MonotoneMap closest_point_retraction(PosetPtr xp, PointSet a) {
  const FinitePoset& x = *xp;
  if (x.height() > 1 || has_cycle_height1(x))
    throw PreconditionError("closest-point retraction needs a height-1 forest");
  if (a.empty() || components(x, a).size() != 1)
    throw PreconditionError("target subspace must be non-empty and connected");
  std::vector<int> near(x.size(), -1);
  std::deque<Point> q;
  for (Point p : a) {
    near[p] = p;
    q.push_back(p);
  }
  while (!q.empty()) {
    Point p = q.front();
    q.pop_front();
    for (Point nb : x.hasse_neighbours(p))
      if (near[nb] < 0) {
        near[nb] = near[p];
        q.push_back(nb);
      }
  }
  // Points in other components go to the first point of a.
  for (auto& v : near)
    if (v < 0) v = *a.first();
  MonotoneMap r{xp, xp, near};
  if (!r.is_retraction()) throw PreconditionError("closest-point map is not a retraction");
  return r;
}

MonotoneMap yoke_retraction(PosetPtr xp, const Embedding& e) {
  const FinitePoset& x = *xp;
  const FinitePoset& y = *e.source;
  Point a = e.map[y.at("a")], b = e.map[y.at("b")], c = e.map[y.at("c")], d = e.map[y.at("d")];
  if (x.up(a).intersects(x.up(b))) throw PreconditionError("a and b have a common upper bound");
  MonotoneMap r{xp, xp, std::vector<Point>(x.size())};
  for (Point p = 0; p < x.size(); ++p) {
    if (x.leq(a, p))
      r.image[p] = a;
    else if (x.leq(b, p))
      r.image[p] = b;
    else if (x.leq(p, d))
      r.image[p] = d;
    else
      r.image[p] = c;
  }
  return r;
}

namespace {

struct FpfBacktrack {
  const FinitePoset& x;
  std::vector<Point> order, f;

  bool run(std::size_t depth) {
    if (depth == order.size()) return true;
    Point p = order[depth];
    for (Point y = 0; y < x.size(); ++y) {
      if (y == p) continue;
      bool ok = true;
      for (Point q = 0; q < x.size() && ok; ++q) {
        if (f[q] < 0) continue;
        if (x.leq(q, p) && !x.leq(f[q], y)) ok = false;
        if (x.leq(p, q) && !x.leq(y, f[q])) ok = false;
      }
      if (!ok) continue;
      f[p] = y;
      if (run(depth + 1)) return true;
      f[p] = -1;
    }
    return false;
  }
};

}  // namespace

FpfSearch find_fixed_point_free_map(PosetPtr xp, int cap) {
  FpfSearch out;
  if (xp->size() > cap) return out;
  out.attempted = true;
  FpfBacktrack s{*xp, {}, std::vector<Point>(xp->size(), -1)};
  s.order.resize(xp->size());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](Point a, Point b) { return xp->rank(a) < xp->rank(b); });
  if (s.run(0)) out.map = MonotoneMap{xp, xp, s.f};
  return out;
}

MonotoneMap cycle_rotation(PosetPtr xp, const std::vector<Point>& cycle) {
  MonotoneMap r = cycle_retraction(xp, cycle);
  const int n = static_cast<int>(cycle.size());
  std::vector<int> pos(xp->size(), -1);
  for (int i = 0; i < n; ++i) pos[cycle[i]] = i;
  MonotoneMap f{xp, xp, std::vector<Point>(xp->size())};
  for (Point p = 0; p < xp->size(); ++p) f.image[p] = cycle[(pos[r.image[p]] + 2) % n];
  return f;
}

}  // namespace pursuit
