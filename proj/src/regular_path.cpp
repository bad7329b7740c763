#include "poset_pursuit/regular_path.hpp"

#include <algorithm>
#include <sstream>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

namespace {

mpz_class floor_of(const Time& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_of(const Time& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Time canon(Time t) {
  t.canonicalize();
  return t;
}

Point junction_value(const FinitePoset& x, const Boundary& a, const Boundary& b, const char* where) {
  if (!a.closed && !b.closed)
    throw ContinuityViolation(std::string("two open ends meet inside ") + where, -1);
  if (a.closed && b.closed && a.value != b.value)
    throw ContinuityViolation(std::string("closed ends disagree (") + x.name(a.value) + " vs " +
                                  x.name(b.value) + ") inside " + where,
                              -1);
  Point j = a.closed ? a.value : b.value;
  for (Point p : a.approach | b.approach)
    if (!x.leq(p, j))
      throw ContinuityViolation(std::string("junction value ") + x.name(j) + " does not dominate " +
                                    x.name(p) + " inside " + where,
                                -1);
  return j;
}

std::shared_ptr<Node> fresh(NodeKind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

void check_point(const FinitePoset& x, Point p) {
  if (p < 0 || p >= x.size()) throw PreconditionError("node value outside the space");
}

Boundary accumulation_boundary(Point limit, PointSet values) { return {true, limit, values}; }

}  // namespace

namespace rp {

NodePtr constant(Point v, const Time& duration) {
  if (duration <= 0) throw PreconditionError("constant pieces need positive duration");
  auto n = fresh(NodeKind::Const);
  n->value = v;
  n->duration = canon(duration);
  n->left = n->right = {false, v, PointSet::single(v)};
  n->values = PointSet::single(v);
  n->full.positive = n->values;
  return n;
}

NodePtr instant(Point v) {
  auto n = fresh(NodeKind::Instant);
  n->value = v;
  n->duration = 0;
  n->left = n->right = {true, v, {}};
  n->values = PointSet::single(v);
  n->full.instants = n->values;
  return n;
}

NodePtr concat(const FinitePoset& x, std::vector<NodePtr> children) {
  std::vector<NodePtr> flat;
  for (auto& c : children) {
    if (!c) throw PreconditionError("null child");
    if (c->kind == NodeKind::Concat)
      flat.insert(flat.end(), c->children.begin(), c->children.end());
    else
      flat.push_back(c);
  }
  if (flat.empty()) throw PreconditionError("empty concatenation");
  if (flat.size() == 1) return flat[0];
  auto n = fresh(NodeKind::Concat);
  n->duration = 0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i + 1 < flat.size()) junction_value(x, flat[i]->right, flat[i + 1]->left, "concatenation");
    n->duration += flat[i]->duration;
    n->values |= flat[i]->values;
    n->full.merge(flat[i]->full);
    n->omega_depth = std::max(n->omega_depth, flat[i]->omega_depth);
  }
  n->duration.canonicalize();
  n->left = flat.front()->left;
  n->right = flat.back()->right;
  if (n->left.closed) {
    n->left.approach = {};
    for (auto& c : flat)
      if (c->duration > 0) {
        n->left.approach = c->left.approach;
        break;
      }
  }
  if (n->right.closed) {
    n->right.approach = {};
    for (auto it = flat.rbegin(); it != flat.rend(); ++it)
      if ((*it)->duration > 0) {
        n->right.approach = (*it)->right.approach;
        break;
      }
  }
  n->children = std::move(flat);
  return n;
}

NodePtr omega(const FinitePoset& x, std::vector<NodePtr> cells, Point limit, Side side,
              const Time& duration) {
  check_point(x, limit);
  if (cells.empty()) throw PreconditionError("omega block needs at least one cell");
  if (duration <= 0) throw PreconditionError("omega block needs positive duration");
  auto n = fresh(NodeKind::Omega);
  n->duration = canon(duration);
  n->limit = limit;
  n->side = side;
  const std::size_t m = cells.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (cells[j]->duration <= 0) throw PreconditionError("omega cells need positive duration");
    n->values |= cells[j]->values;
    n->full.positive |= cells[j]->full.positive;
    n->full.dense |= cells[j]->full.instants | cells[j]->full.dense;
    n->omega_depth = std::max(n->omega_depth, cells[j]->omega_depth + 1);
  }
  for (Point p : n->values)
    if (!x.leq(p, limit))
      throw ContinuityViolation("omega value " + x.name(p) + " is not below the limit " + x.name(limit), -1);
  for (std::size_t j = 0; j < m; ++j) {
    if (side == Side::Left)
      junction_value(x, cells[(j + 1) % m]->right, cells[j]->left, "omega block");
    else
      junction_value(x, cells[j]->right, cells[(j + 1) % m]->left, "omega block");
  }
  PointSet inner = n->values;
  n->values.insert(limit);
  n->full.instants.insert(limit);
  if (side == Side::Left) {
    n->left = accumulation_boundary(limit, inner);
    n->right = cells[0]->right;
  } else {
    n->left = cells[0]->left;
    n->right = accumulation_boundary(limit, inner);
  }
  n->children = std::move(cells);
  return n;
}

NodePtr self_similar(const FinitePoset& x, std::vector<SkeletonItem> skeleton, Point limit,
                     const Time& duration) {
  check_point(x, limit);
  if (duration <= 0) throw PreconditionError("self-similar block needs positive duration");
  auto n = fresh(NodeKind::SelfSimilar);
  n->duration = canon(duration);
  n->limit = limit;
  Time total = 0;
  bool has_slot = false;
  for (auto& it : skeleton) {
    if (it.is_slot()) {
      if (it.slot <= 0 || it.slot >= 1) throw PreconditionError("slot lengths must lie in (0,1)");
      it.slot.canonicalize();
      total += it.slot;
      has_slot = true;
    } else {
      if (it.node->duration <= 0) throw PreconditionError("fixed skeleton pieces need positive duration");
      total += it.node->duration;
      n->values |= it.node->values;
      n->full.positive |= it.node->full.positive;
      n->full.dense |= it.node->full.instants | it.node->full.dense;
      n->omega_depth = std::max(n->omega_depth, it.node->omega_depth);
    }
  }
  if (!has_slot) throw PreconditionError("self-similar skeleton needs a slot");
  if (total != 1) throw PreconditionError("self-similar skeleton lengths must sum to 1");
  n->values.insert(limit);
  n->full.dense.insert(limit);
  for (Point p : n->values)
    if (!x.leq(p, limit))
      throw ContinuityViolation("self-similar value " + x.name(p) + " is not below the limit " +
                                    x.name(limit),
                                -1);
  const auto& first = skeleton.front();
  const auto& last = skeleton.back();
  n->left = first.is_slot() ? accumulation_boundary(limit, n->values) : first.node->left;
  n->right = last.is_slot() ? accumulation_boundary(limit, n->values) : last.node->right;
  for (std::size_t i = 0; i + 1 < skeleton.size(); ++i) {
    const Boundary& a = skeleton[i].is_slot() ? n->right : skeleton[i].node->right;
    const Boundary& b = skeleton[i + 1].is_slot() ? n->left : skeleton[i + 1].node->left;
    junction_value(x, a, b, "self-similar skeleton");
  }
  n->skeleton = std::move(skeleton);
  return n;
}

NodePtr reversed(const FinitePoset& x, const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Const:
    case NodeKind::Instant:
      return n;
    case NodeKind::Concat: {
      std::vector<NodePtr> c;
      for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) c.push_back(reversed(x, *it));
      return concat(x, c);
    }
    case NodeKind::Omega: {
      std::vector<NodePtr> c;
      for (auto& cell : n->children) c.push_back(reversed(x, cell));
      return omega(x, c, n->limit, n->side == Side::Left ? Side::Right : Side::Left, n->duration);
    }
    case NodeKind::SelfSimilar: {
      std::vector<SkeletonItem> s;
      for (auto it = n->skeleton.rbegin(); it != n->skeleton.rend(); ++it)
        s.push_back(it->is_slot() ? *it : SkeletonItem{reversed(x, it->node), 0});
      return self_similar(x, s, n->limit, n->duration);
    }
  }
  throw PreconditionError("unknown node kind");
}

NodePtr mapped(const MonotoneMap& f, const NodePtr& n) {
  const FinitePoset& y = *f.codomain;
  switch (n->kind) {
    case NodeKind::Const:
      return constant(f(n->value), n->duration);
    case NodeKind::Instant:
      return instant(f(n->value));
    case NodeKind::Concat: {
      std::vector<NodePtr> c;
      for (auto& ch : n->children) c.push_back(mapped(f, ch));
      return concat(y, c);
    }
    case NodeKind::Omega: {
      std::vector<NodePtr> c;
      for (auto& cell : n->children) c.push_back(mapped(f, cell));
      return omega(y, c, f(n->limit), n->side, n->duration);
    }
    case NodeKind::SelfSimilar: {
      std::vector<SkeletonItem> s;
      for (auto& it : n->skeleton) s.push_back(it.is_slot() ? it : SkeletonItem{mapped(f, it.node), 0});
      return self_similar(y, s, f(n->limit), n->duration);
    }
  }
  throw PreconditionError("unknown node kind");
}

NodePtr scaled(const FinitePoset& x, const NodePtr& n, const Time& factor) {
  if (factor <= 0) throw PreconditionError("scale factor must be positive");
  switch (n->kind) {
    case NodeKind::Const:
      return constant(n->value, n->duration * factor);
    case NodeKind::Instant:
      return n;
    case NodeKind::Concat: {
      std::vector<NodePtr> c;
      for (auto& ch : n->children) c.push_back(scaled(x, ch, factor));
      return concat(x, c);
    }
    case NodeKind::Omega:
      return omega(x, n->children, n->limit, n->side, n->duration * factor);
    case NodeKind::SelfSimilar:
      return self_similar(x, n->skeleton, n->limit, n->duration * factor);
  }
  throw PreconditionError("unknown node kind");
}

}  // namespace rp

namespace {

std::optional<Point> eval(const Node& n, const Time& t);

// Value of one omega copy around node-local time t. Returns nothing if t is
// at an open end of that copy.
std::optional<Point> eval_copy(const Node& n, const mpz_class& copy, const Time& t) {
  const Time& d = n.duration;
  const std::size_t m = n.children.size();
  mpz_class idx = (copy - 1) % static_cast<unsigned long>(m);
  const Node& cell = *n.children[idx.get_ui()];
  Time a, b;
  if (n.side == Side::Left) {
    a = canon(d / Time(copy + 1));
    b = canon(d / Time(copy));
  } else {
    a = canon(d - d / Time(copy));
    b = canon(d - d / Time(copy + 1));
  }
  Time u = canon((t - a) * cell.duration / (b - a));
  return eval(cell, u);
}

std::optional<Point> eval_omega(const Node& n, const Time& t) {
  const Time& d = n.duration;
  Time s = n.side == Side::Left ? t : canon(d - t);  // distance from the accumulation point
  if (s == 0) return n.limit;
  Time q = canon(d / s);
  mpz_class c = floor_of(q);
  auto v = eval_copy(n, c, t);
  if (v) return v;
  if (q.get_den() == 1 && c >= 2) return eval_copy(n, c - 1, t);
  return std::nullopt;
}

std::optional<Point> eval_self_similar(const Node& n, Time u) {
  std::vector<Time> seen;
  for (int guard = 0; guard < 100000; ++guard) {
    Time o = 0;
    const SkeletonItem* slot = nullptr;
    Time slot_off;
    for (const auto& it : n.skeleton) {
      Time len = it.is_slot() ? it.slot : it.node->duration;
      if (u >= o && u <= o + len) {
        if (!it.is_slot()) {
          if (auto v = eval(*it.node, canon(u - o))) return v;
        } else if (!slot) {
          slot = &it;
          slot_off = o;
        }
      }
      o += len;
    }
    if (!slot) return std::nullopt;
    if (std::find(seen.begin(), seen.end(), u) != seen.end()) return n.limit;
    seen.push_back(u);
    u = canon((u - slot_off) / slot->slot);
  }
  throw Error("self-similar evaluation did not stabilise");
}

std::optional<Point> eval(const Node& n, const Time& t) {
  switch (n.kind) {
    case NodeKind::Const:
      if (t <= 0 || t >= n.duration) return std::nullopt;
      return n.value;
    case NodeKind::Instant:
      return n.value;
    case NodeKind::Concat: {
      Time off = 0;
      for (auto& c : n.children) {
        Time e = off + c->duration;
        if (t >= off && t <= e)
          if (auto v = eval(*c, canon(t - off))) return v;
        if (t < off) break;
        off = e;
      }
      return std::nullopt;
    }
    case NodeKind::Omega:
      return eval_omega(n, t);
    case NodeKind::SelfSimilar:
      return eval_self_similar(n, canon(t / n.duration));
  }
  return std::nullopt;
}

struct Frame {
  const Node* node;
  Time l, r;
  bool cycle = false;
};

struct ProfileCtx {
  std::vector<Frame> stack;
};

void prof(const Node& n, const Time& l, const Time& r, Profile& out, ProfileCtx& ctx);

void closure_of_cells(const Node& n, Profile& out) {
  for (auto& c : n.children) {
    out.positive |= c->full.positive;
    out.dense |= c->full.instants | c->full.dense;
  }
}

void prof_copy(const Node& n, const mpz_class& copy, const Time& l, const Time& r, Profile& out,
               ProfileCtx& ctx) {
  const Time& d = n.duration;
  mpz_class idx = (copy - 1) % static_cast<unsigned long>(n.children.size());
  const Node& cell = *n.children[idx.get_ui()];
  Time a, b;
  if (n.side == Side::Left) {
    a = canon(d / Time(copy + 1));
    b = canon(d / Time(copy));
  } else {
    a = canon(d - d / Time(copy));
    b = canon(d - d / Time(copy + 1));
  }
  Time s = canon(cell.duration / (b - a));
  prof(cell, canon((l - a) * s), canon((r - a) * s), out, ctx);
}

void prof_omega(const Node& n, const Time& l, const Time& r, Profile& out, ProfileCtx& ctx) {
  const Time& d = n.duration;
  // Window in coordinates measured from the accumulation point.
  Time lo = n.side == Side::Left ? l : canon(d - r);
  Time hi = n.side == Side::Left ? r : canon(d - l);
  if (lo <= 0) {
    closure_of_cells(n, out);
    if (lo < 0) out.instants.insert(n.limit);
    return;
  }
  mpz_class n_lo = hi > d ? mpz_class(1) : floor_of(canon(d / hi));
  if (n_lo < 1) n_lo = 1;
  mpz_class n_hi = ceil_of(canon(d / lo)) - 1;
  const std::size_t m = n.children.size();
  if (n_hi - n_lo + 1 <= mpz_class(2 * m + 2)) {
    for (mpz_class c = n_lo; c <= n_hi; ++c) prof_copy(n, c, l, r, out, ctx);
    return;
  }
  prof_copy(n, n_lo, l, r, out, ctx);
  prof_copy(n, n_hi, l, r, out, ctx);
  for (auto& c : n.children) out.merge(c->full);
}

Time clamp_l(const Time& l) { return l < 0 ? Time(-1) : l; }
Time clamp_r(const Time& r) { return r > 1 ? Time(2) : r; }

void prof_self_similar(const Node& n, const Time& l, const Time& r, Profile& out, ProfileCtx& ctx) {
  if (l < 0 && r > 1) {
    out.merge(n.full);
    return;
  }
  for (auto& f : ctx.stack)
    if (f.node == &n && f.l == l && f.r == r) {
      f.cycle = true;
      return;
    }
  ctx.stack.push_back({&n, l, r});
  const std::size_t frame = ctx.stack.size() - 1;
  Profile p;
  Time o = 0;
  for (const auto& it : n.skeleton) {
    if (!it.is_slot()) {
      prof(*it.node, canon(l - o), canon(r - o), p, ctx);
      o += it.node->duration;
      continue;
    }
    const Time e = o + it.slot;
    if (r > o && l < e) {
      if (l <= o && r >= e) {
        p.positive |= n.full.positive;
        p.dense |= n.full.instants | n.full.dense;
        if (l < o && n.left.closed) p.instants.insert(n.left.value);
        if (r > e && n.right.closed) p.instants.insert(n.right.value);
      } else {
        prof_self_similar(n, clamp_l(canon((l - o) / it.slot)), clamp_r(canon((r - o) / it.slot)), p, ctx);
      }
    }
    o = e;
  }
  if (ctx.stack[frame].cycle) {
    p.dense |= p.instants;
    p.instants = {};
  }
  ctx.stack.pop_back();
  out.merge(p);
}

void prof(const Node& n, const Time& l, const Time& r, Profile& out, ProfileCtx& ctx) {
  const Time& d = n.duration;
  if (d == 0) {
    if (l < 0 && r > 0) out.merge(n.full);
    return;
  }
  if (r <= 0 || l >= d) return;
  if (l < 0 && r > d) {
    out.merge(n.full);
    return;
  }
  switch (n.kind) {
    case NodeKind::Const:
      out.positive.insert(n.value);
      return;
    case NodeKind::Instant:
      return;
    case NodeKind::Concat: {
      Time off = 0;
      for (auto& c : n.children) {
        prof(*c, canon(l - off), canon(r - off), out, ctx);
        off += c->duration;
      }
      return;
    }
    case NodeKind::Omega:
      prof_omega(n, l, r, out, ctx);
      return;
    case NodeKind::SelfSimilar:
      prof_self_similar(n, clamp_l(canon(l / d)), clamp_r(canon(r / d)), out, ctx);
      return;
  }
}

}  // namespace

RegularPath::RegularPath(PosetPtr space, NodePtr root, const Time& start)
    : space_(std::move(space)), root_(std::move(root)), start_(canon(start)) {
  if (!space_ || !root_) throw PreconditionError("regular path needs a space and a root");
  if (!root_->left.closed || !root_->right.closed)
    throw ContinuityViolation("a path must be defined at both ends of its domain", -1);
  if (root_->omega_depth > space_->height() + 1)
    throw PreconditionError("omega nesting deeper than height + 1");
  for (Point p : root_->values) check_point(*space_, p);
}

RegularPath RegularPath::from_step_path(const StepPath& g) {
  std::vector<NodePtr> parts{rp::instant(g.breakpoint(0))};
  for (int i = 0; i < g.intervals(); ++i) {
    parts.push_back(rp::constant(g.interval(i), g.time(i + 1) - g.time(i)));
    parts.push_back(rp::instant(g.breakpoint(i + 1)));
  }
  return RegularPath(g.space_ptr(), rp::concat(g.space(), parts), g.start());
}

RegularPath RegularPath::rescaled(const Time& new_start, const Time& new_end) const {
  if (root_->duration == 0) return RegularPath(space_, root_, new_start);
  return RegularPath(space_, rp::scaled(*space_, root_, canon((new_end - new_start) / root_->duration)),
                     new_start);
}

Point RegularPath::value_at(const Time& t) const {
  if (t < start_ || t > end()) throw DomainMismatch("time " + to_string(t) + " outside the path domain");
  auto v = eval(*root_, canon(t - start_));
  if (!v) throw Error("path undefined at " + to_string(t));
  return *v;
}

Profile RegularPath::value_profile(const Time& l, const Time& r) const {
  Profile out;
  if (!(l < r)) return out;
  ProfileCtx ctx;
  prof(*root_, canon(l - start_), canon(r - start_), out, ctx);
  return out;
}

RegularPath reverse(const RegularPath& g) {
  return RegularPath(g.space_ptr(), rp::reversed(g.space(), g.root()), g.start());
}

RegularPath map_path(const MonotoneMap& f, const RegularPath& g) {
  if (!(*f.domain == g.space())) throw PreconditionError("map domain differs from the path space");
  return RegularPath(f.codomain, rp::mapped(f, g.root()), g.start());
}

RegularPath concat(const RegularPath& a, const RegularPath& b) {
  if (!(a.space() == b.space())) throw PreconditionError("paths live in different spaces");
  return RegularPath(a.space_ptr(), rp::concat(a.space(), {a.root(), b.root()}), a.start());
}

std::optional<CoincidenceLocator> coincidence_regular_step(const RegularPath& g, const StepPath& r) {
  if (g.start() != r.start() || g.end() != r.end())
    throw DomainMismatch("coincidence check needs equal domains");
  for (int i = 0; i <= r.intervals(); ++i)
    if (g.value_at(r.time(i)) == r.breakpoint(i)) return CoincidenceLocator{r.time(i), r.time(i)};
  for (int i = 0; i < r.intervals(); ++i)
    if (g.values_in(r.time(i), r.time(i + 1)).contains(r.interval(i)))
      return CoincidenceLocator{r.time(i), r.time(i + 1)};
  return std::nullopt;
}

namespace {

struct Emitter {
  const FinitePoset& x;
  PathBuilder& pb;
  int k;
  Unrolled& out;
};

Point filler_value(const FinitePoset& x, Point a, Point b) {
  PointSet common = x.down(a) & x.down(b) & x.minimal();
  if (common.empty())
    throw ContinuityViolation("no filler value below both " + x.name(a) + " and " + x.name(b), -1);
  return *common.first();
}

void emit(const Node& n, const Time& off, const Time& scale, int depth, Emitter& em);

void emit_omega(const Node& n, const Time& off, const Time& scale, Emitter& em) {
  const Time& d = n.duration;
  const int kk = em.k;
  const std::size_t m = n.children.size();
  auto at = [&](const Time& t) { return canon(off + t * scale); };
  auto cell_of = [&](int c) -> const Node& { return *n.children[(c - 1) % m]; };
  if (n.side == Side::Left) {
    em.pb.point(at(0), n.limit);
    Time a = canon(d / (kk + 1));
    const Node& c = cell_of(kk);
    if (c.left.closed) {
      em.pb.open(at(a), c.left.value);
    } else {
      em.pb.open(at(a), n.limit);
      em.pb.point(at(a), n.limit);
    }
    em.out.replaced.emplace_back(at(0), at(a));
    for (int cp = kk; cp >= 1; --cp) {
      Time s = canon(d / (cp + 1)), e = canon(d / cp);
      const Node& cell = cell_of(cp);
      emit(cell, at(s), canon((e - s) * scale / cell.duration), em.k, em);
    }
  } else {
    for (int cp = 1; cp <= kk; ++cp) {
      Time s = canon(d - d / cp), e = canon(d - d / (cp + 1));
      const Node& cell = cell_of(cp);
      emit(cell, at(s), canon((e - s) * scale / cell.duration), em.k, em);
    }
    Time a = canon(d - d / (kk + 1));
    const Node& c = cell_of(kk);
    if (c.right.closed) {
      em.pb.open(at(d), c.right.value);
    } else {
      em.pb.point(at(a), n.limit);
      em.pb.open(at(d), n.limit);
    }
    em.pb.point(at(d), n.limit);
    em.out.replaced.emplace_back(at(a), at(d));
  }
}

void emit_self_similar(const Node& n, const Time& off, const Time& scale, int depth, Emitter& em) {
  const Time unit = canon(n.duration * scale);
  if (n.skeleton.front().is_slot() && depth <= 1) em.pb.point(off, n.limit);
  Time o = 0;
  for (const auto& it : n.skeleton) {
    if (!it.is_slot()) {
      emit(*it.node, canon(off + o * unit), unit, depth, em);
      o += it.node->duration;
      continue;
    }
    Time ga = canon(off + o * unit), gb = canon(off + (o + it.slot) * unit);
    if (depth > 1) {
      emit_self_similar(n, ga, canon(scale * it.slot), depth - 1, em);
    } else {
      Point x = *eval(n, canon(o * n.duration));
      Point y = *eval(n, canon((o + it.slot) * n.duration));
      em.pb.point(ga, x);
      em.pb.open(gb, filler_value(em.x, x, y));
      em.pb.point(gb, y);
      em.out.replaced.emplace_back(ga, gb);
      em.out.probes.push_back(canon(ga + (gb - ga) / 3));
      em.out.probes.push_back(canon(ga + 2 * (gb - ga) / 3));
    }
    o += it.slot;
  }
  if (n.skeleton.back().is_slot() && depth <= 1) em.pb.point(canon(off + unit), n.limit);
}

void emit(const Node& n, const Time& off, const Time& scale, int depth, Emitter& em) {
  switch (n.kind) {
    case NodeKind::Const:
      em.pb.open(canon(off + n.duration * scale), n.value);
      return;
    case NodeKind::Instant:
      em.pb.point(off, n.value);
      return;
    case NodeKind::Concat: {
      Time acc = 0;
      for (auto& c : n.children) {
        emit(*c, canon(off + acc * scale), scale, depth, em);
        acc += c->duration;
      }
      return;
    }
    case NodeKind::Omega:
      emit_omega(n, off, scale, em);
      return;
    case NodeKind::SelfSimilar:
      emit_self_similar(n, off, scale, depth, em);
      return;
  }
}

}  // namespace

Unrolled unroll_detailed(const RegularPath& g, int k) {
  if (k < 1) throw PreconditionError("unroll depth must be at least 1");
  if (g.duration() == 0) throw PreconditionError("cannot unroll a path of zero duration");
  PathBuilder pb(g.space_ptr());
  Unrolled out{StepPath::constant(g.space_ptr(), 0, 0, 1), {}, {}};
  Emitter em{g.space(), pb, k, out};
  emit(*g.root(), g.start(), 1, k, em);
  out.path = pb.build();
  return out;
}

std::string describe(const FinitePoset& x, const NodePtr& n) {
  std::ostringstream os;
  switch (n->kind) {
    case NodeKind::Const:
      os << "const(" << x.name(n->value) << "," << to_string(n->duration) << ")";
      break;
    case NodeKind::Instant:
      os << "instant(" << x.name(n->value) << ")";
      break;
    case NodeKind::Concat:
      os << "concat[";
      for (std::size_t i = 0; i < n->children.size(); ++i)
        os << (i ? ", " : "") << describe(x, n->children[i]);
      os << "]";
      break;
    case NodeKind::Omega:
      os << "omega(" << (n->side == Side::Left ? "left" : "right") << "," << x.name(n->limit) << ","
         << to_string(n->duration) << ")[";
      for (std::size_t i = 0; i < n->children.size(); ++i)
        os << (i ? ", " : "") << describe(x, n->children[i]);
      os << "]";
      break;
    case NodeKind::SelfSimilar:
      os << "selfsimilar(" << x.name(n->limit) << "," << to_string(n->duration) << ")[";
      for (std::size_t i = 0; i < n->skeleton.size(); ++i) {
        os << (i ? ", " : "");
        if (n->skeleton[i].is_slot())
          os << "slot(" << to_string(n->skeleton[i].slot) << ")";
        else
          os << describe(x, n->skeleton[i].node);
      }
      os << "]";
      break;
  }
  return os.str();
}

}  // namespace pursuit
