#include "poset_pursuit/complexes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

namespace {

bool simplex_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() < b.bits();
}

constexpr std::size_t kMaxSimplices = 1u << 20;

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices, const std::vector<PointSet>& faces)
    : vertices_(std::move(vertices)) {
  const int n = vertex_count();
  if (n > 64) throw PreconditionError("at most 64 vertices are supported");
  std::set<std::uint64_t> all;
  for (int v = 0; v < n; ++v) all.insert(PointSet::single(v).bits());
  for (PointSet f : faces) {
    if (f.empty()) throw PreconditionError("empty face");
    if (!f.subset_of(PointSet::first_n(n))) throw PreconditionError("face uses an unknown vertex");
    if (f.size() > 20) throw PreconditionError("face too large to close downward");
    // Every nonempty subset of f.
    const std::uint64_t bits = f.bits();
    for (std::uint64_t s = bits; s; s = (s - 1) & bits) {
      all.insert(s);
      if (all.size() > kMaxSimplices) throw PreconditionError("complex too large");
    }
  }
  for (auto b : all) simplices_.push_back(PointSet(b));
  std::sort(simplices_.begin(), simplices_.end(), simplex_less);
}

SimplicialComplex SimplicialComplex::from_names(std::vector<std::string> vertices,
                                                const std::vector<std::vector<std::string>>& faces) {
  std::vector<PointSet> sets;
  for (auto& f : faces) {
    PointSet s;
    for (auto& name : f) {
      auto it = std::find(vertices.begin(), vertices.end(), name);
      if (it == vertices.end()) throw PreconditionError("unknown vertex " + name);
      s.insert(static_cast<Point>(it - vertices.begin()));
    }
    sets.push_back(s);
  }
  return SimplicialComplex(std::move(vertices), sets);
}

bool SimplicialComplex::contains(PointSet s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s, simplex_less);
}

int SimplicialComplex::dimension() const { return simplices_.empty() ? -1 : simplices_.back().size() - 1; }

std::vector<long> SimplicialComplex::f_vector() const {
  std::vector<long> f(dimension() + 1, 0);
  for (PointSet s : simplices_) ++f[s.size() - 1];
  return f;
}

std::string SimplicialComplex::simplex_name(PointSet s) const {
  std::string out = "{";
  for (Point v : s) out += (out.size() > 1 ? "," : "") + vertices_[v];
  return out + "}";
}

SimplicialComplex order_complex(const FinitePoset& x) {
  std::vector<PointSet> chains;
  // Chains grown upward from each point.
  std::vector<std::pair<PointSet, Point>> stack;
  for (Point p = 0; p < x.size(); ++p) stack.push_back({PointSet::single(p), p});
  while (!stack.empty()) {
    auto [c, top] = stack.back();
    stack.pop_back();
    chains.push_back(c);
    if (chains.size() > kMaxSimplices) throw PreconditionError("order complex too large");
    for (Point q : x.up(top) - PointSet::single(top)) stack.push_back({c | PointSet::single(q), q});
  }
  return SimplicialComplex(x.names(), chains);
}

FinitePoset face_poset(const SimplicialComplex& k) {
  std::vector<std::string> names;
  for (PointSet s : k.simplices()) names.push_back(k.simplex_name(s));
  std::vector<std::pair<std::string, std::string>> rel;
  const auto& simp = k.simplices();
  for (PointSet s : simp)
    for (Point v : s)
      if (s.size() > 1) {
        PointSet face = s;
        face.erase(v);
        rel.emplace_back(k.simplex_name(face), k.simplex_name(s));
      }
  return FinitePoset(names, rel);
}

SimplicialPath::SimplicialPath(ComplexPtr complex, std::vector<Time> times, std::vector<PointSet> breakpoints,
                               std::vector<PointSet> intervals, std::optional<PointSet> tail)
    : complex_(std::move(complex)),
      times_(std::move(times)),
      breakpoints_(std::move(breakpoints)),
      intervals_(std::move(intervals)),
      tail_(tail) {
  if (times_.empty() || breakpoints_.size() != times_.size() || intervals_.size() + 1 != times_.size())
    throw PreconditionError("simplicial path needs k+1 times and breakpoints and k intervals");
  for (std::size_t i = 0; i + 1 < times_.size(); ++i)
    if (!(times_[i] < times_[i + 1])) throw PreconditionError("times must increase");
  auto check = [&](PointSet s) {
    if (!complex_->contains(s)) throw PreconditionError("not a simplex: " + complex_->simplex_name(s));
  };
  for (PointSet s : breakpoints_) check(s);
  for (PointSet s : intervals_) check(s);
  if (tail_) check(*tail_);
  for (std::size_t i = 0; i < intervals_.size(); ++i)
    if (!breakpoints_[i].subset_of(intervals_[i]) || !breakpoints_[i + 1].subset_of(intervals_[i]))
      throw PreconditionError("breakpoint simplex is not a face of its neighbour at t=" + to_string(times_[i]));
  if (tail_ && !breakpoints_.back().subset_of(*tail_))
    throw PreconditionError("last breakpoint simplex is not a face of the tail");
}

SimplicialPath SimplicialPath::normalized() const {
  std::vector<Time> t{times_[0]};
  std::vector<PointSet> w{breakpoints_[0]}, v;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!v.empty() && v.back() == intervals_[i] && w.back() == intervals_[i]) {
      t.back() = times_[i + 1];
      w.back() = breakpoints_[i + 1];
      continue;
    }
    v.push_back(intervals_[i]);
    t.push_back(times_[i + 1]);
    w.push_back(breakpoints_[i + 1]);
  }
  return SimplicialPath(complex_, t, w, v, tail_);
}

std::string SimplicialPath::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    out << complex_->simplex_name(breakpoints_[i]) << "@" << to_string(times_[i]);
    if (i < intervals_.size()) out << " " << complex_->simplex_name(intervals_[i]) << " ";
  }
  if (tail_) out << " then " << complex_->simplex_name(*tail_);
  return out.str();
}

StepPath mu_project(const PosetPtr& x, const SimplicialPath& p) {
  if (p.complex().vertices() != x->names()) throw DomainMismatch("path is not in the order complex of this space");
  auto least = [&](PointSet chain) {
    for (Point m : chain)
      if (chain.subset_of(x->up(m))) return m;
    throw PreconditionError("simplex is not a chain");
  };
  std::vector<Point> w, v;
  for (PointSet s : p.breakpoint_simplices()) w.push_back(least(s));
  for (PointSet s : p.interval_simplices()) v.push_back(least(s));
  std::optional<Point> tail;
  if (p.tail()) tail = least(*p.tail());
  return StepPath(x, p.times(), w, v, tail);
}

SimplicialPath lift_step_path(const ComplexPtr& k, const StepPath& g) {
  if (k->vertices() != g.space().names()) throw DomainMismatch("complex is not the order complex of the path's space");
  auto one = [](Point p) { return PointSet::single(p); };
  std::vector<Time> t{g.start()};
  std::vector<PointSet> w{one(g.breakpoint(0))}, v;
  for (int i = 0; i < g.intervals(); ++i) {
    const Time &lo = g.time(i), &hi = g.time(i + 1);
    Time a = lo + (hi - lo) / 3, b = lo + (hi - lo) * 2 / 3;
    a.canonicalize();
    b.canonicalize();
    const Point val = g.interval(i);
    v.push_back(one(val) | one(g.breakpoint(i)));
    t.push_back(a);
    w.push_back(one(val));
    v.push_back(one(val));
    t.push_back(b);
    w.push_back(one(val));
    v.push_back(one(val) | one(g.breakpoint(i + 1)));
    t.push_back(hi);
    w.push_back(one(g.breakpoint(i + 1)));
  }
  std::optional<PointSet> tail;
  if (g.tail()) tail = one(*g.tail()) | w.back();
  return SimplicialPath(k, t, w, v, tail).normalized();
}

SimplicialPath lift_step_path(const StepPath& g) {
  return lift_step_path(std::make_shared<const SimplicialComplex>(order_complex(g.space())), g);
}

CellPoset CellPoset::from_faces(const std::vector<std::pair<std::string, int>>& cells,
                                const std::vector<std::pair<std::string, std::string>>& faces) {
  std::vector<std::string> names;
  for (auto& c : cells) names.push_back(c.first);
  CellPoset s{FinitePoset(names, faces), {}};
  s.dim.assign(s.poset.size(), 0);
  for (auto& [name, d] : cells) s.dim[s.poset.at(name)] = d;
  if (auto v = s.violation(); !v.empty()) throw PreconditionError("invalid cell poset: " + v);
  return s;
}

std::string CellPoset::violation() const {
  if (static_cast<int>(dim.size()) != poset.size()) return "one dimension per cell is required";
  for (auto [lo, hi] : poset.covers())
    if (dim[lo] >= dim[hi])
      return "cell " + poset.name(lo) + " is a face of " + poset.name(hi) + " but not of lower dimension";
  for (int d : dim)
    if (d < 0) return "negative dimension";
  return "";
}

std::vector<std::pair<Point, Point>> CellPoset::dimension_gaps() const {
  std::vector<std::pair<Point, Point>> out;
  for (auto [lo, hi] : poset.covers())
    if (dim[hi] - dim[lo] > 1) out.emplace_back(lo, hi);
  return out;
}

std::vector<int> CellPoset::room_counts() const {
  int top = dim.empty() ? -1 : *std::max_element(dim.begin(), dim.end());
  std::vector<int> out(top + 1, 0);
  for (int d : dim) ++out[d];
  return out;
}

CellPoset gallery(std::string_view name) {
  if (name == "segment")
    return CellPoset::from_faces({{"a", 1}, {"b0", 0}, {"b1", 0}}, {{"b0", "a"}, {"b1", "a"}});
  if (name == "gallery-1")
    // Two triangles e and f sharing the edge d; b is a vertex of d, a is an
    // edge of e and c an edge of f.
    return CellPoset::from_faces({{"e", 2}, {"f", 2}, {"a", 1}, {"c", 1}, {"d", 1}, {"b", 0}},
                                 {{"b", "d"}, {"d", "e"}, {"d", "f"}, {"a", "e"}, {"c", "f"}});
  if (name == "gallery-2") {
    // A strip of faces: v1 is a vertex shared by f1, f2, f3; the edges e1
    // and e2 join f3-f4 and f4-f5; v2 is shared by f5, f6, f7.
    auto s = CellPoset::from_faces(
        {{"v1", 0}, {"v2", 0}, {"e1", 1}, {"e2", 1}, {"f1", 2}, {"f2", 2}, {"f3", 2}, {"f4", 2}, {"f5", 2},
         {"f6", 2}, {"f7", 2}},
        {{"v1", "f1"}, {"v1", "f2"}, {"v1", "f3"}, {"e1", "f3"}, {"e1", "f4"}, {"e2", "f4"}, {"e2", "f5"},
         {"v2", "f5"}, {"v2", "f6"}, {"v2", "f7"}});
    s.reconstructed = true;
    return s;
  }
  if (name == "gallery-3")
    return CellPoset::from_faces({{"d", 2}, {"c", 1}, {"a", 0}, {"b", 0}},
                                 {{"a", "c"}, {"b", "c"}, {"c", "d"}});
  throw PreconditionError("unknown gallery: " + std::string(name));
}

std::vector<std::string> gallery_names() { return {"segment", "gallery-1", "gallery-2", "gallery-3"}; }

FinitePoset gallery_space(const CellPoset& s) { return opposite(s.poset); }

std::string WatcherVerdict::winner() const {
  switch (verdict.outcome) {
    case Outcome::CopWins: return "watcher";
    case Outcome::RobberWins: return "thief";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

WatcherVerdict watcher_decide(const CellPoset& s, const ClassifyOptions& opts) {
  if (auto v = s.violation(); !v.empty()) throw PreconditionError("invalid cell poset: " + v);
  WatcherVerdict out{classify(share(gallery_space(s)), opts), ""};
  std::ostringstream r;
  auto counts = s.room_counts();
  r << "rooms:";
  for (std::size_t d = 0; d < counts.size(); ++d) r << " " << counts[d] << " of dimension " << d << ";";
  r << " " << out.winner() << " wins";
  if (out.verdict.outcome != Outcome::Unknown) r << " (rule " << out.verdict.rule << ")";
  if (s.reconstructed) r << "; cell structure reconstructed from room counts";
  out.report = r.str();
  return out;
}

}  // namespace pursuit
