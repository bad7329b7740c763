#include "poset_pursuit/poset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

namespace {

// Reflexive-transitive closure of a relation given as down-sets (Warshall).
std::vector<PointSet> close_down(std::vector<PointSet> down) {
  const int n = static_cast<int>(down.size());
  for (int i = 0; i < n; ++i) down[i].insert(i);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (down[i].contains(k)) down[i] |= down[k];
  return down;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& relations) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], static_cast<int>(i)).second)
      throw ParseError("duplicate point '" + names[i] + "'");
  std::vector<PointSet> down(names.size());
  for (const auto& [lo, hi] : relations) {
    auto a = index.find(lo), b = index.find(hi);
    if (a == index.end() || b == index.end())
      throw ParseError("relation refers to unknown point '" +
                       (a == index.end() ? lo : hi) + "'");
    down[b->second].insert(a->second);
  }
  *this = from_down_sets(std::move(names), down);
}

FinitePoset FinitePoset::from_down_sets(std::vector<std::string> names,
                                        const std::vector<PointSet>& down) {
  const int n = static_cast<int>(names.size());
  if (n > kMaxPoints) throw PreconditionError("at most 64 points are supported");
  if (static_cast<int>(down.size()) != n) throw PreconditionError("down-set count mismatch");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  FinitePoset p;
  p.names_.resize(n);
  std::vector<PointSet> d(n);
  for (int i = 0; i < n; ++i) {
    p.names_[pos[i]] = names[i];
    for (Point j : down[i]) d[pos[i]].insert(pos[j]);
  }
  for (int i = 1; i < n; ++i)
    if (p.names_[i] == p.names_[i - 1]) throw ParseError("duplicate point '" + p.names_[i] + "'");
  p.down_ = close_down(std::move(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.down_[i].contains(j) && p.down_[j].contains(i))
        throw PreconditionError("relation is not antisymmetric on " + p.names_[i] + ", " +
                                p.names_[j]);
  p.finish();
  return p;
}

void FinitePoset::finish() {
  const int n = size();
  up_.assign(n, PointSet{});
  for (int i = 0; i < n; ++i)
    for (Point j : down_[i]) up_[j].insert(i);
  upper_covers_.assign(n, PointSet{});
  lower_covers_.assign(n, PointSet{});
  covers_.clear();
  for (int hi = 0; hi < n; ++hi) {
    PointSet strict = down_[hi] - PointSet::single(hi);
    for (Point lo : strict) {
      // lo is covered by hi when nothing lies strictly between them.
      PointSet between = strict & up_[lo];
      between.erase(lo);
      if (between.empty()) {
        covers_.emplace_back(lo, hi);
        upper_covers_[lo].insert(hi);
        lower_covers_[hi].insert(lo);
      }
    }
  }
  std::sort(covers_.begin(), covers_.end());
  maximal_ = minimal_ = PointSet{};
  for (int i = 0; i < n; ++i) {
    if (upper_covers_[i].empty()) maximal_.insert(i);
    if (lower_covers_[i].empty()) minimal_.insert(i);
  }
  // Ranks in order of increasing down-set size (a linear extension).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return down_[a].size() < down_[b].size(); });
  rank_.assign(n, 0);
  height_ = n ? 0 : -1;
  for (int x : order) {
    for (Point lo : lower_covers_[x]) rank_[x] = std::max(rank_[x], rank_[lo] + 1);
    height_ = std::max(height_, rank_[x]);
  }
}

std::optional<Point> FinitePoset::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Point>(it - names_.begin());
}

Point FinitePoset::at(std::string_view name) const {
  auto p = find(name);
  if (!p) throw PreconditionError("unknown point '" + std::string(name) + "'");
  return *p;
}

PointSet FinitePoset::down_closure(PointSet s) const {
  PointSet r;
  for (Point p : s) r |= down_[p];
  return r;
}

PointSet FinitePoset::up_closure(PointSet s) const {
  PointSet r;
  for (Point p : s) r |= up_[p];
  return r;
}

std::optional<Point> FinitePoset::maximum() const {
  if (maximal_.size() == 1) return maximal_.first();
  return std::nullopt;
}

std::optional<Point> FinitePoset::minimum() const {
  if (minimal_.size() == 1) return minimal_.first();
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> FinitePoset::relation_names() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [lo, hi] : covers_) out.emplace_back(names_[lo], names_[hi]);
  return out;
}

std::string FinitePoset::describe() const {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << names_[i];
  os << " |";
  for (auto [lo, hi] : covers_) os << " " << names_[lo] << "<" << names_[hi];
  os << "}";
  return os.str();
}

bool NonT0Report::map_is_continuous() const {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < points.size(); ++i) idx[points[i]] = static_cast<int>(i);
  std::vector<int> f(points.size());
  for (const auto& [from, to] : map) f[idx.at(from)] = idx.at(to);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      if (leq[i][j] && !leq[f[i]][f[j]]) return false;
  return true;
}

bool NonT0Report::map_is_fixed_point_free() const {
  return std::none_of(map.begin(), map.end(), [](const auto& kv) { return kv.first == kv.second; });
}

std::vector<std::string> NonT0Report::apply(const std::vector<std::string>& values) const {
  std::map<std::string, std::string> m(map.begin(), map.end());
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(m.at(v));
  return out;
}

PosetOrReport from_relations(const PreorderInput& input) {
  std::vector<std::string> names = input.points;
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw ParseError("duplicate point identifier");
  const int n = static_cast<int>(names.size());
  auto idx = [&](const std::string& s) {
    auto it = std::lower_bound(names.begin(), names.end(), s);
    if (it == names.end() || *it != s) throw ParseError("relation refers to unknown point '" + s + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : input.relations) leq[idx(a)][idx(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i]) {
        NonT0Report r;
        r.points = names;
        r.leq = leq;
        r.x = names[i];
        r.y = names[j];
        for (int p = 0; p < n; ++p) r.map.emplace_back(names[p], p == i ? names[j] : names[i]);
        return r;
      }
  return FinitePoset(names, input.relations);
}

Subspace induced(const FinitePoset& x, PointSet keep) {
  Subspace s;
  std::vector<std::string> names;
  for (Point p : keep) {
    s.to_parent.push_back(p);
    names.push_back(x.name(p));
  }
  std::vector<PointSet> down(names.size());
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j)
      if (x.leq(s.to_parent[j], s.to_parent[i])) down[i].insert(static_cast<int>(j));
  // Points are already in lexicographic order because `keep` iterates by index.
  s.space = FinitePoset::from_down_sets(std::move(names), down);
  s.from_parent.assign(x.size(), -1);
  for (std::size_t i = 0; i < s.to_parent.size(); ++i)
    s.from_parent[s.to_parent[i]] = static_cast<int>(i);
  return s;
}

FinitePoset opposite(const FinitePoset& x) {
  std::vector<PointSet> down(x.size());
  for (int i = 0; i < x.size(); ++i) down[i] = x.up(i);
  return FinitePoset::from_down_sets(x.names(), down);
}

Subspace extrema(const FinitePoset& x) { return induced(x, x.maximal() | x.minimal()); }

std::vector<PointSet> components(const FinitePoset& x, PointSet within) {
  std::vector<PointSet> out;
  PointSet left = within;
  while (auto start = left.first()) {
    PointSet comp = PointSet::single(*start), frontier = comp;
    while (!frontier.empty()) {
      PointSet next;
      for (Point p : frontier) next |= (x.down(p) | x.up(p)) & within;
      frontier = next - comp;
      comp |= next;
    }
    out.push_back(comp);
    left -= comp;
  }
  return out;
}

bool is_connected(const FinitePoset& x) { return components(x).size() <= 1; }

std::optional<std::vector<Point>> fence_between(const FinitePoset& x, Point a, Point b,
                                                PointSet within) {
  if (!within.contains(a) || !within.contains(b)) return std::nullopt;
  std::vector<int> prev(x.size(), -2);
  std::deque<Point> q{a};
  prev[a] = -1;
  while (!q.empty()) {
    Point p = q.front();
    q.pop_front();
    if (p == b) break;
    for (Point nb : (x.down(p) | x.up(p)) & within)
      if (prev[nb] == -2) {
        prev[nb] = p;
        q.push_back(nb);
      }
  }
  if (prev[b] == -2) return std::nullopt;
  std::vector<Point> path;
  for (int p = b; p != -1; p = prev[p]) path.push_back(p);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<Point>> fence_between(const FinitePoset& x, Point a, Point b) {
  return fence_between(x, a, b, x.all());
}

std::pair<FinitePoset, std::string> with_new_point(const FinitePoset& x, const std::string& base,
                                                   const std::string& anchor, bool below) {
  std::string name = base;
  for (int i = 1; x.find(name); ++i) name = base + std::to_string(i);
  auto names = x.names();
  auto rel = x.relation_names();
  names.push_back(name);
  if (below)
    rel.emplace_back(name, anchor);
  else
    rel.emplace_back(anchor, name);
  return {FinitePoset(names, rel), name};
}

}  // namespace pursuit
