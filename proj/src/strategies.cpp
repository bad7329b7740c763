#include "poset_pursuit/strategies.hpp"

#include <algorithm>
#include <functional>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/conditions.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/maps.hpp"

namespace pursuit {

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Max: return "Max";
    case StrategyKind::Fence: return "Fence";
    case StrategyKind::Height1: return "Height1";
    case StrategyKind::Main2: return "Main2";
    case StrategyKind::Fractal: return "Fractal";
    case StrategyKind::Singleton: return "Singleton";
    case StrategyKind::Glued: return "Glued";
  }
  return "?";
}

namespace {

std::string join_names(const FinitePoset& x, const std::vector<Point>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + x.name(pts[i]);
  return s + "}";
}

std::optional<Point> top_of(const FinitePoset& x, PointSet s) {
  for (Point p : s)
    if (s.subset_of(x.down(p))) return p;
  return std::nullopt;
}

std::optional<Point> bottom_of(const FinitePoset& x, PointSet s) {
  for (Point p : s)
    if (s.subset_of(x.up(p))) return p;
  return std::nullopt;
}

NodePtr loop_at(const FinitePoset& x, Point p) {
  return rp::concat(x, {rp::instant(p), rp::constant(p, 1), rp::instant(p)});
}

// A copy of x with extra points making both ends of a fence minimal, and the
// map sending each extra point back to its anchor.
struct Extended {
  PosetPtr space;
  std::vector<Point> fence;  // indices in `space`
  MonotoneMap back;
};

Extended extend_fence_ends(const PosetPtr& xp, const std::vector<Point>& fence) {
  const FinitePoset& x = *xp;
  std::vector<std::string> names;
  for (Point p : fence) names.push_back(x.name(p));
  FinitePoset ext = x;
  std::vector<std::pair<std::string, std::string>> anchors;  // new point, anchor
  if (x.maximal().contains(fence.front())) {
    auto [np, n] = with_new_point(ext, "_" + names.front(), names.front(), true);
    ext = std::move(np);
    anchors.emplace_back(n, names.front());
    names.insert(names.begin(), n);
  }
  if (x.maximal().contains(fence.back())) {
    auto [np, n] = with_new_point(ext, "_" + names.back(), names.back(), true);
    ext = std::move(np);
    anchors.emplace_back(n, names.back());
    names.push_back(n);
  }
  Extended out;
  out.space = share(std::move(ext));
  for (auto& n : names) out.fence.push_back(out.space->at(n));
  out.back = MonotoneMap{out.space, xp, std::vector<Point>(out.space->size())};
  for (Point p = 0; p < out.space->size(); ++p) {
    const std::string& n = out.space->name(p);
    if (auto q = x.find(n)) {
      out.back.image[p] = *q;
      continue;
    }
    for (auto& [v, a] : anchors)
      if (v == n) out.back.image[p] = x.at(a);
  }
  return out;
}

std::vector<Point> sorted_points(PointSet s) { return {s.begin(), s.end()}; }

}  // namespace

NodePtr max_strategy_node(const FinitePoset& x, PointSet s) {
  auto top = top_of(x, s);
  if (!top) throw PreconditionError("subspace has no maximum");
  if (s.size() == 1) return loop_at(x, *top);
  PointSet rest = s - PointSet::single(*top);
  std::vector<Point> kids;
  for (Point p : rest)
    if ((x.up(p) & rest) == PointSet::single(p)) kids.push_back(p);
  const std::size_t m = kids.size();
  auto bottom = bottom_of(x, s);
  std::vector<NodePtr> cells;
  for (std::size_t j = 0; j < m; ++j) {
    // Copy n sits on [1/(n+1), 1/n] and uses cell n-1, so the copy starting
    // at 1/k shows child k mod m.
    Point c = kids[(j + 2) % m], next = kids[(j + 1) % m];
    NodePtr inner = max_strategy_node(x, x.down(c) & s);
    NodePtr link;
    if (bottom) {
      link = rp::constant(*bottom, 1);
    } else if (PointSet common = x.down(c) & x.down(next) & s; !common.empty()) {
      link = rp::constant(*common.first(), 1);
    } else {
      link = rp::concat(x, {rp::constant(c, 1), rp::instant(*top), rp::constant(next, 1)});
    }
    cells.push_back(rp::concat(x, {inner, link}));
  }
  NodePtr block = rp::omega(x, cells, *top, Side::Left, 1);
  return rp::concat(x, {block, rp::instant(*top)});
}

RegularPath max_strategy(const PosetPtr& x) {
  if (!x->maximum()) throw PreconditionError("max strategy needs a maximum");
  return RegularPath(x, max_strategy_node(*x, x->all()));
}

StepPath fence_strategy(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  if (x.size() < 2) throw PreconditionError("fence strategy needs at least two points");
  if (x.height() > 1) throw PreconditionError("fence strategy needs height at most 1");
  if (!is_connected(x) || static_cast<int>(x.covers().size()) != x.size() - 1)
    throw PreconditionError("Hasse diagram is not a simple path");
  std::optional<Point> leaf;
  for (Point p = 0; p < x.size(); ++p) {
    int deg = x.hasse_neighbours(p).size();
    if (deg > 2) throw PreconditionError("Hasse diagram is not a simple path");
    if (deg == 1 && !leaf) leaf = p;
  }
  std::vector<Point> order{*leaf};
  PointSet seen = PointSet::single(*leaf);
  while (static_cast<int>(order.size()) < x.size()) {
    PointSet nb = x.hasse_neighbours(order.back()) - seen;
    order.push_back(*nb.first());
    seen.insert(order.back());
  }
  // Maximal points become breakpoints, minimal points intervals; the end
  // points also appear as breakpoints.
  std::vector<Point> seq{order.front()};
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    Point p = order[i], q = order[i + 1];
    seq.push_back(x.leq(p, q) ? p : q);
    seq.push_back(q);
  }
  return StepPath::from_sequence(xp, seq).normalized();
}

std::vector<Point> longest_fence(const FinitePoset& x, PointSet within) {
  std::vector<Point> best, cur;
  PointSet used;
  std::function<void()> dfs = [&] {
    if (cur.size() > best.size() || (cur.size() == best.size() && cur < best)) best = cur;
    for (Point q : within - used) {
      if (!x.comparable(cur.back(), q)) continue;
      cur.push_back(q);
      used.insert(q);
      dfs();
      used.erase(q);
      cur.pop_back();
    }
  };
  for (Point p : within) {
    cur = {p};
    used = PointSet::single(p);
    dfs();
  }
  return best;
}

namespace {

void require_height1_conditions(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  if (!is_connected(x)) throw ConditionFailed("connected", "space is disconnected");
  if (x.height() > 1) throw ConditionFailed("height", "space has height " + std::to_string(x.height()));
  if (auto c = has_cycle_height1(x)) throw ConditionFailed("cycle", join_names(x, *c));
  if (auto e = find_order_embedding(share(catalog("S21")), xp))
    throw ConditionFailed("S21", join_names(x, e->map));
  if (auto e = find_order_embedding(share(catalog("S30op")), xp))
    throw ConditionFailed("S30op", join_names(x, e->map));
}

// Oscillation over a cone with apex `top`: c_{n mod m} on (1/(n+1), 1/n),
// apex at every 1/n.
NodePtr cone_oscillation(const FinitePoset& x, Point top) {
  auto kids = sorted_points(x.all() - PointSet::single(top));
  const std::size_t m = kids.size();
  std::vector<NodePtr> cells;
  for (std::size_t j = 0; j < m; ++j)
    cells.push_back(rp::concat(x, {rp::constant(kids[(j + 1) % m], 1), rp::instant(top)}));
  return rp::omega(x, cells, top, Side::Left, 1);
}

// The points above the bottom visited one by one over a dense bottom.
NodePtr cone_op_sweep(const FinitePoset& x, Point bottom) {
  auto tops = sorted_points(x.all() - PointSet::single(bottom));
  const Time piece(1, static_cast<long>(tops.size() - 1));
  std::vector<NodePtr> parts{rp::instant(tops.front())};
  for (std::size_t k = 1; k < tops.size(); ++k) {
    parts.push_back(rp::constant(bottom, piece));
    parts.push_back(rp::instant(tops[k]));
  }
  return rp::concat(x, parts);
}

}  // namespace

RegularPath height1_strategy(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  require_height1_conditions(xp);
  if (x.size() == 1) return max_strategy(xp);
  if (auto top = x.maximum()) return RegularPath(xp, cone_oscillation(x, *top));
  if (auto bottom = x.minimum()) return RegularPath(xp, cone_op_sweep(x, *bottom));

  Extended ext = extend_fence_ends(xp, longest_fence(x, x.all()));
  const FinitePoset& e = *ext.space;
  const auto& a = ext.fence;
  const int l = static_cast<int>(a.size()) - 1;
  if (l < 4 || l % 2) throw Error("unexpected fence shape in height-1 synthesis");
  auto single = [](Point p) { return PointSet::single(p); };

  std::vector<NodePtr> blocks;
  {
    std::vector<Point> pattern{a[0]};
    for (Point c : e.down(a[1]) - single(a[0]) - single(a[1]) - single(a[2])) pattern.push_back(c);
    pattern.push_back(a[2]);
    const std::size_t M = pattern.size();
    std::vector<NodePtr> cells;
    for (std::size_t j = 0; j < M; ++j)
      cells.push_back(rp::concat(e, {rp::instant(a[1]), rp::constant(pattern[(j + 1) % M], 1)}));
    blocks.push_back(rp::omega(e, cells, a[1], Side::Right, 1));
  }
  for (int i = 1; i <= l / 2 - 1; ++i) {
    Point low = a[2 * i];
    auto bs = sorted_points(e.up(low) - single(low) - single(a[2 * i - 1]) - single(a[2 * i + 1]));
    const Time piece(2, static_cast<long>(bs.size() + 1));
    blocks.push_back(rp::instant(a[2 * i - 1]));
    blocks.push_back(rp::constant(low, piece));
    for (Point b : bs) {
      blocks.push_back(rp::instant(b));
      blocks.push_back(rp::constant(low, piece));
    }
  }
  blocks.push_back(rp::instant(a[l - 1]));
  {
    std::vector<Point> pattern{a[l]};
    for (Point d : e.down(a[l - 1]) - single(a[l]) - single(a[l - 1]) - single(a[l - 2]))
      pattern.push_back(d);
    pattern.push_back(a[l - 2]);
    const std::size_t M = pattern.size();
    std::vector<NodePtr> cells;
    for (std::size_t j = 0; j < M; ++j)
      cells.push_back(rp::concat(e, {rp::constant(pattern[(j + 1) % M], 1), rp::instant(a[l - 1])}));
    blocks.push_back(rp::omega(e, cells, a[l - 1], Side::Left, 1));
  }
  NodePtr root = rp::concat(e, blocks);
  return RegularPath(xp, rp::mapped(ext.back, root));
}

RegularPath main2_strategy(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  if (!is_connected(x)) throw ConditionFailed("connected", "space is disconnected");
  ConditionReport rep = check_conditions(xp);
  if (int f = rep.first_failed()) throw ConditionFailed(std::to_string(f), rep.describe());
  if (x.maximum()) return max_strategy(xp);

  std::vector<Point> fence;
  for (Point p : longest_fence(*rep.extrema_space, rep.extrema_space->all()))
    fence.push_back(rep.extrema_to_parent[p]);
  Extended ext = extend_fence_ends(xp, fence);
  const FinitePoset& e = *ext.space;
  const auto& a = ext.fence;
  const int l = static_cast<int>(a.size()) - 1;
  if (l < 4 || l % 2) throw Error("unexpected fence shape in general synthesis");
  auto single = [](Point p) { return PointSet::single(p); };

  std::vector<NodePtr> blocks{rp::reversed(e, max_strategy_node(e, e.down(a[1])))};
  for (int i = 1; i <= l / 2 - 1; ++i) {
    Point low = a[2 * i];
    std::vector<NodePtr> parts{max_strategy_node(e, e.down(a[2 * i - 1]) & e.up(low)),
                               rp::constant(low, 1)};
    PointSet bs = (e.up(low) & e.maximal()) - single(a[2 * i - 1]) - single(a[2 * i + 1]);
    for (Point b : bs) {
      parts.push_back(max_strategy_node(e, e.down(b)));
      parts.push_back(rp::constant(low, 1));
    }
    parts.push_back(rp::reversed(e, max_strategy_node(e, e.down(a[2 * i + 1]) & e.up(low))));
    NodePtr block = rp::concat(e, parts);
    blocks.push_back(rp::scaled(e, block, Time(2) / block->duration));
  }
  blocks.push_back(max_strategy_node(e, e.down(a[l - 1])));
  NodePtr root = rp::concat(e, blocks);
  return RegularPath(xp, rp::mapped(ext.back, root));
}

NodePtr fractal_sigma(const FinitePoset& x) {
  const Time quarter(1, 4);
  Point b = x.at("b"), d = x.at("d"), e = x.at("e"), f = x.at("f");
  auto first = rp::concat(x, {rp::instant(d), rp::constant(f, quarter), rp::instant(d)});
  auto third = rp::concat(x, {rp::instant(b), rp::constant(e, quarter), rp::instant(d)});
  return rp::self_similar(x, {{first, 0}, {nullptr, quarter}, {third, 0}, {nullptr, quarter}}, b, 1);
}

RegularPath fractal_strategy(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  auto root = rp::concat(x, {rp::instant(x.at("c")), rp::constant(x.at("f"), 1), fractal_sigma(x),
                             rp::constant(x.at("e"), 1), rp::instant(x.at("a"))});
  return RegularPath(xp, root, -1);
}

RegularPath fractal_strategy() { return fractal_strategy(share(catalog("Fractal6"))); }

namespace {

// Whether the preimage of p under g is exactly the given end of the domain.
bool hits_only_at(const RegularPath& g, Point p, bool at_end) {
  if (g.value_at(at_end ? g.end() : g.start()) != p) return false;
  if (g.duration() == 0) return true;
  if (g.value_at(at_end ? g.start() : g.end()) == p) return false;
  return !g.values_in(g.start(), g.end()).contains(p);
}

MonotoneMap collapse_onto(const PosetPtr& z, PointSet keep, Point z0) {
  MonotoneMap r{z, z, std::vector<Point>(z->size())};
  for (Point p = 0; p < z->size(); ++p) r.image[p] = keep.contains(p) ? p : z0;
  return r;
}

}  // namespace

GlueCheck check_glue(const RegularPath& gx, const RegularPath& gy, const GlueData& d) {
  GlueCheck c;
  auto fail = [&](std::string why) {
    c.failure = std::move(why);
    return c;
  };
  const FinitePoset& z = *d.z;
  if (!(gx.space() == z) || !(gy.space() == z)) return fail("paths must live in the glued space");
  if ((d.x_part | d.y_part) != z.all()) return fail("the two parts do not cover the space");
  if (d.z0 < 0 || !d.x_part.contains(d.z0) || !d.y_part.contains(d.z0))
    return fail("junction point must lie in both parts");
  if (!gx.root()->values.subset_of(d.x_part)) return fail("first path leaves its part");
  if (!gy.root()->values.subset_of(d.y_part)) return fail("second path leaves its part");
  if (!collapse_onto(d.z, d.x_part, d.z0).is_monotone())
    return fail("no retraction onto the first part collapsing the rest to the junction");
  if (!hits_only_at(gx, d.z0, true)) return fail("first path meets the junction point before its end");
  if (gy.value_at(gy.start()) != d.z0) return fail("second path does not start at the junction point");
  bool retract_y = collapse_onto(d.z, d.y_part, d.z0).is_monotone() && hits_only_at(gy, d.z0, false);
  bool open_y = z.is_open(d.y_part) &&
                (d.y_kind == StrategyKind::Max || d.y_kind == StrategyKind::Singleton);
  if (!retract_y && !open_y)
    return fail("neither the retraction hypothesis nor the open-part hypothesis holds");
  c.ok = true;
  c.used_open_hypothesis = !retract_y;
  return c;
}

RegularPath glue(const RegularPath& gx, const RegularPath& gy, const GlueData& d) {
  GlueCheck c = check_glue(gx, gy, d);
  if (!c.ok) throw ConditionFailed("glue", c.failure);
  if (gx.duration() == 0) return gy.shifted(gx.start());
  return concat(gx, gy);
}

}  // namespace pursuit
