#include "poset_pursuit/verifier.hpp"

#include <algorithm>
#include <sstream>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

bool link(const FinitePoset& x, Point v, Point a, Point b) {
  const PointSet rest = x.all() - PointSet::single(v);
  const PointSet ua = x.down(a) - PointSet::single(v);
  const PointSet ub = x.down(b) - PointSet::single(v);
  for (PointSet c : components(x, rest))
    if (c.intersects(ua) && c.intersects(ub)) return true;
  return false;
}

LinkTable::LinkTable(const FinitePoset& x) : n_(x.size()), rows_(static_cast<std::size_t>(n_) * n_, 0) {
  for (Point v = 0; v < n_; ++v) {
    const PointSet rest = x.all() - PointSet::single(v);
    auto comps = components(x, rest);
    for (Point a = 0; a < n_; ++a) {
      PointSet reach;
      for (PointSet c : comps)
        if (c.intersects(x.down(a))) reach |= c;
      PointSet row;
      for (Point b = 0; b < n_; ++b)
        if (reach.intersects(x.down(b) - PointSet::single(v))) row.insert(b);
      rows_[v * n_ + a] = row.bits();
    }
  }
}

std::optional<EscapeWitness> escape_exists(const FinitePoset& x, const StepPath& cop) {
  if (!(cop.space() == x)) throw PreconditionError("cop path lives in a different space");
  LinkTable link_of(x);
  const int k = cop.intervals();
  std::vector<PointSet> layer(k + 1);
  layer[0] = x.all() - PointSet::single(cop.breakpoint(0));
  for (int i = 0; i < k; ++i) {
    PointSet next;
    for (Point p : layer[i]) next |= link_of.row(cop.interval(i), p);
    layer[i + 1] = next - PointSet::single(cop.breakpoint(i + 1));
    if (layer[i + 1].empty()) return std::nullopt;
  }
  EscapeWitness w;
  w.assignment.assign(k + 1, -1);
  for (Point p : layer[k]) {
    if (cop.tail()) {
      PointSet rest = x.down(p) - PointSet::single(*cop.tail());
      if (rest.empty()) continue;
      w.tail = *rest.first();
    }
    w.assignment[k] = p;
    break;
  }
  if (w.assignment[k] < 0) return std::nullopt;
  for (int i = k - 1; i >= 0; --i)
    for (Point p : layer[i])
      if (link_of(cop.interval(i), p, w.assignment[i + 1])) {
        w.assignment[i] = p;
        break;
      }
  return w;
}

EnumeratedEscape::EnumeratedEscape(const FinitePoset& x, int extra) : reach_(x.size()), x_(x) {
  const int n = x.size();
  for (Point v = 0; v < n; ++v) {
    auto& reach = reach_[v];
    reach.assign(n, PointSet());
    for (int r = 0; r <= extra; ++r) {
      // Robber values a, u0, y1, u1, ..., yr, ur, b.
      const int len = 2 * r + 3;
      std::vector<Point> s(len, 0);
      for (;;) {
        bool ok = true;
        for (int i = 1; i < len - 1 && ok; ++i) ok = s[i] != v;
        for (int i = 1; i < len && ok; i += 2) ok = x.leq(s[i], s[i - 1]) && x.leq(s[i], s[i + 1]);
        if (ok) reach[s[0]].insert(s[len - 1]);
        int i = 0;
        while (i < len && ++s[i] == n) s[i++] = 0;
        if (i == len) break;
      }
    }
  }
}

bool EnumeratedEscape::operator()(const StepPath& cop) const {
  if (cop.tail()) throw PreconditionError("enumeration handles compact cop paths only");
  if (!(cop.space() == x_)) throw PreconditionError("cop path lives in a different space");
  PointSet layer = x_.all() - PointSet::single(cop.breakpoint(0));
  for (int i = 0; i < cop.intervals() && !layer.empty(); ++i) {
    PointSet next;
    for (Point p : layer) next |= reach_[cop.interval(i)][p];
    layer = next - PointSet::single(cop.breakpoint(i + 1));
  }
  return !layer.empty();
}

bool escape_by_enumeration(const StepPath& cop, int extra) {
  return EnumeratedEscape(cop.space(), extra)(cop);
}

namespace {

// Shortest fence inside X\{v} from some point below a to some point below b.
std::vector<Point> connecting_fence(const FinitePoset& x, Point v, Point a, Point b) {
  const PointSet rest = x.all() - PointSet::single(v);
  std::optional<std::vector<Point>> best;
  for (Point s : x.down(a) - PointSet::single(v))
    for (Point e : x.down(b) - PointSet::single(v)) {
      auto f = fence_between(x, s, e, rest);
      if (f && (!best || f->size() < best->size())) best = f;
    }
  if (!best) throw Error("witness step is not linked");
  return *best;
}

}  // namespace

StepPath realize_escape(const StepPath& cop, const EscapeWitness& w) {
  const FinitePoset& x = cop.space();
  const int k = cop.intervals();
  if (static_cast<int>(w.assignment.size()) != k + 1) throw PreconditionError("witness length mismatch");
  PathBuilder pb(cop.space_ptr());
  for (int i = 0; i < k; ++i) {
    const Point from = w.assignment[i], to = w.assignment[i + 1];
    auto fence = connecting_fence(x, cop.interval(i), from, to);
    const Time t0 = cop.time(i), t1 = cop.time(i + 1);
    const int m = static_cast<int>(fence.size()) - 1;
    pb.point(t0, from);
    for (int j = 0; j < m; ++j) {
      Time t = t0 + (t1 - t0) * Time(j + 1, m + 1);
      t.canonicalize();
      Point hi = x.leq(fence[j], fence[j + 1]) ? fence[j + 1] : fence[j];
      pb.open(t, fence[j]);
      pb.point(t, hi);
    }
    pb.open(t1, fence.back());
    pb.point(t1, to);
  }
  StepPath raw = pb.build();
  StepPath path(raw.space_ptr(), raw.times(), raw.breakpoint_values(), raw.interval_values(), w.tail);
  return path.normalized();
}

StrongStrategyVerdict is_strong_strategy(const StepPath& cop) {
  auto w = escape_exists(cop.space(), cop);
  if (!w) return {true, std::nullopt};
  return {false, realize_escape(cop, *w)};
}

std::vector<Time> canonical_grid(const RegularPath& cop, int k) {
  auto u = unroll_detailed(cop, k);
  std::vector<Time> g = u.path.times();
  g.insert(g.end(), u.probes.begin(), u.probes.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Time> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.push_back(g[i]);
    if (i + 1 < g.size()) out.push_back(midpoint(g[i], g[i + 1]));
  }
  return out;
}

std::optional<StepPath> grid_escape_search(const RegularPath& cop, std::vector<Time> grid, int budget) {
  const FinitePoset& x = cop.space();
  const int n = x.size();
  for (auto& t : grid) t.canonicalize();
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2 || grid.front() != cop.start() || grid.back() != cop.end())
    throw PreconditionError("search grid must span the cop's domain");
  const int last = static_cast<int>(grid.size()) - 1;
  std::vector<Point> at(grid.size());
  std::vector<PointSet> cell(last);
  for (int m = 0; m <= last; ++m) at[m] = cop.value_at(grid[m]);
  for (int m = 0; m < last; ++m) cell[m] = cop.values_in(grid[m], grid[m + 1]);

  const int layers = budget + 1;
  auto id = [&](int i, Point w, int c) { return (static_cast<std::size_t>(i) * n + w) * layers + c; };
  struct Parent {
    int i = -1;
    Point w = -1;
    int c = -1;
    Point u = -1;
  };
  std::vector<char> seen(static_cast<std::size_t>(grid.size()) * n * layers, 0);
  std::vector<Parent> parent(seen.size());
  for (Point w = 0; w < n; ++w)
    if (w != at[0]) seen[id(0, w, 0)] = 1;

  std::optional<std::pair<Parent, Point>> finish;
  for (int i = 0; i < last && !finish; ++i)
    for (Point w = 0; w < n && !finish; ++w)
      for (int c = 0; c < layers && !finish; ++c) {
        if (!seen[id(i, w, c)]) continue;
        for (Point u : x.down(w)) {
          for (int j = i + 1; j <= last; ++j) {
            if (cell[j - 1].contains(u)) break;
            if (j - 1 > i && at[j - 1] == u) break;
            for (Point w2 : x.up(u)) {
              if (w2 == at[j]) continue;
              if (j == last) {
                finish = std::make_pair(Parent{i, w, c, u}, w2);
                break;
              }
              if (c + 1 < layers && !seen[id(j, w2, c + 1)]) {
                seen[id(j, w2, c + 1)] = 1;
                parent[id(j, w2, c + 1)] = {i, w, c, u};
              }
            }
            if (finish) break;
          }
          if (finish) break;
        }
      }
  if (!finish) return std::nullopt;

  std::vector<Time> times{grid[last]};
  std::vector<Point> bps{finish->second}, ivs;
  Parent cur = finish->first;
  for (;;) {
    ivs.push_back(cur.u);
    times.push_back(grid[cur.i]);
    bps.push_back(cur.w);
    if (cur.i == 0) break;
    cur = parent[id(cur.i, cur.w, cur.c)];
  }
  std::reverse(times.begin(), times.end());
  std::reverse(bps.begin(), bps.end());
  std::reverse(ivs.begin(), ivs.end());
  StepPath robber(cop.space_ptr(), times, bps, ivs);
  if (coincidence_regular_step(cop, robber))
    throw Error("grid search produced a path that meets the cop");
  return robber;
}

std::string BoundedSearchReport::summary() const {
  std::ostringstream os;
  if (escape) {
    os << "escape found (" << escape->intervals() - 1 << " interior breakpoints)";
  } else {
    os << "none found (B=" << budget << ", k=" << unroll << ", grid " << grid_size << ")";
    if (deeper_found) os << "; k=" << unroll + 1 << (*deeper_found ? " finds an escape" : " agrees");
  }
  return os.str();
}

BoundedSearchReport bounded_escape_search(const RegularPath& cop, int budget, int k, bool check_deeper) {
  if (budget < 0) throw PreconditionError("budget must be non-negative");
  BoundedSearchReport r;
  r.budget = budget;
  r.unroll = k;
  auto grid = canonical_grid(cop, k);
  r.grid_size = grid.size();
  r.escape = grid_escape_search(cop, grid, budget);
  if (!r.escape && check_deeper)
    r.deeper_found = grid_escape_search(cop, canonical_grid(cop, k + 1), budget).has_value();
  return r;
}

}  // namespace pursuit
