#include "poset_pursuit/step_path.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

StepPath::StepPath(PosetPtr space, std::vector<Time> times, std::vector<Point> breakpoints,
                   std::vector<Point> intervals, std::optional<Point> tail)
    : space_(std::move(space)),
      times_(std::move(times)),
      breakpoints_(std::move(breakpoints)),
      intervals_(std::move(intervals)),
      tail_(tail) {
  if (!space_) throw PreconditionError("path needs an ambient space");
  if (intervals_.empty()) throw PreconditionError("a step path needs at least one interval");
  if (times_.size() != intervals_.size() + 1 || breakpoints_.size() != times_.size())
    throw PreconditionError("inconsistent step path lengths");
  for (auto& t : times_) t.canonicalize();
  for (std::size_t i = 0; i + 1 < times_.size(); ++i)
    if (!(times_[i] < times_[i + 1]))
      throw NonMonotoneTimes("breakpoint times must increase strictly (index " +
                             std::to_string(i + 1) + ")");
  const int n = space_->size();
  auto check = [n](Point p) {
    if (p < 0 || p >= n) throw PreconditionError("path value outside the space");
  };
  for (Point p : breakpoints_) check(p);
  for (Point p : intervals_) check(p);
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const Point v = intervals_[i];
    for (std::size_t j : {i, i + 1})
      if (!space_->leq(v, breakpoints_[j]))
        throw ContinuityViolation("interval value " + space_->name(v) + " is not below breakpoint value " +
                                      space_->name(breakpoints_[j]) + " at t=" + to_string(times_[j]),
                                  static_cast<int>(j));
  }
  if (tail_) {
    check(*tail_);
    if (!space_->leq(*tail_, breakpoints_.back()))
      throw ContinuityViolation("tail value is not below the final breakpoint value",
                                static_cast<int>(times_.size()) - 1);
  }
}

StepPath StepPath::constant(PosetPtr space, Point value, const Time& t0, const Time& t1) {
  return StepPath(std::move(space), {t0, t1}, {value, value}, {value});
}

StepPath StepPath::from_sequence(PosetPtr space, const std::vector<Point>& seq, const Time& t0) {
  if (seq.size() < 3 || seq.size() % 2 == 0) throw PreconditionError("value sequence must have odd length >= 3");
  std::vector<Time> times;
  std::vector<Point> w, v;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i % 2 == 0) {
      times.push_back(t0 + Time(static_cast<long>(i / 2)));
      w.push_back(seq[i]);
    } else {
      v.push_back(seq[i]);
    }
  }
  return StepPath(std::move(space), times, w, v);
}

Point StepPath::value_at(const Time& t) const {
  if (t < times_.front() || t > times_.back()) {
    if (tail_ && t > times_.back()) return *tail_;
    throw DomainMismatch("time " + to_string(t) + " outside the path domain");
  }
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  std::size_t i = it - times_.begin();
  if (*it == t) return breakpoints_[i];
  return intervals_[i - 1];
}

std::vector<Point> StepPath::value_sequence() const {
  std::vector<Point> seq{breakpoints_[0]};
  for (int i = 0; i < intervals(); ++i) {
    seq.push_back(intervals_[i]);
    seq.push_back(breakpoints_[i + 1]);
  }
  return seq;
}

PointSet StepPath::image() const {
  PointSet s;
  for (Point p : breakpoints_) s.insert(p);
  for (Point p : intervals_) s.insert(p);
  return s;
}

StepPath StepPath::normalized() const {
  std::vector<Time> t{times_[0]};
  std::vector<Point> w{breakpoints_[0]}, v;
  for (int i = 0; i < intervals(); ++i) {
    if (!v.empty() && v.back() == intervals_[i] && w.back() == intervals_[i]) {
      // Interior breakpoint equal to both neighbours: drop it.
      t.back() = times_[i + 1];
      w.back() = breakpoints_[i + 1];
      continue;
    }
    v.push_back(intervals_[i]);
    t.push_back(times_[i + 1]);
    w.push_back(breakpoints_[i + 1]);
  }
  return StepPath(space_, t, w, v, tail_);
}

bool StepPath::same_function(const StepPath& o) const {
  if (space_ != o.space_ && !(*space_ == *o.space_)) return false;
  if (start() != o.start() || end() != o.end()) return false;
  StepPath a = normalized(), b = o.normalized();
  return a.times_ == b.times_ && a.breakpoints_ == b.breakpoints_ && a.intervals_ == b.intervals_ &&
         a.tail_ == b.tail_;
}

bool StepPath::operator==(const StepPath& o) const {
  return (*space_ == *o.space_) && times_ == o.times_ && breakpoints_ == o.breakpoints_ &&
         intervals_ == o.intervals_ && tail_ == o.tail_;
}

std::string StepPath::describe() const {
  std::ostringstream os;
  for (int i = 0; i <= intervals(); ++i) {
    os << space_->name(breakpoints_[i]) << "@" << to_string(times_[i]);
    if (i < intervals()) os << " (" << space_->name(intervals_[i]) << ") ";
  }
  if (tail_) os << " then " << space_->name(*tail_);
  return os.str();
}

PathBuilder& PathBuilder::point(const Time& t, Point v) {
  if (opens_.size() == points_.size() && !points_.empty()) {
    // Closing a pending open piece.
    if (t != pending_end_) throw PreconditionError("open piece ended at an unexpected time");
    times_.push_back(t);
    points_.push_back(v);
    return *this;
  }
  if (!times_.empty()) {
    if (times_.back() == t) {
      if (points_.back() != v)
        throw ContinuityViolation("conflicting values at t=" + to_string(t),
                                  static_cast<int>(times_.size()) - 1);
      return *this;
    }
    throw PreconditionError("a point must follow an open piece or repeat the last point");
  }
  times_.push_back(t);
  points_.push_back(v);
  return *this;
}

PathBuilder& PathBuilder::open(const Time& to, Point v) {
  if (points_.empty() || opens_.size() == points_.size())
    throw PreconditionError("an open piece must follow a point");
  if (!(times_.back() < to)) throw NonMonotoneTimes("open piece has non-positive length");
  opens_.push_back(v);
  pending_end_ = to;
  return *this;
}

PathBuilder& PathBuilder::closed(const Time& from, const Time& to, Point v) {
  point(from, v);
  open(to, v);
  return point(to, v);
}

StepPath PathBuilder::build() const {
  if (opens_.size() != points_.size() - 1) throw PreconditionError("path ends with an open piece");
  return StepPath(space_, times_, points_, opens_);
}

std::optional<Time> coincidence_step(const StepPath& a, const StepPath& b) {
  if (a.start() != b.start() || a.end() != b.end())
    throw DomainMismatch("coincidence check needs equal domains");
  std::vector<Time> grid = a.times();
  grid.insert(grid.end(), b.times().begin(), b.times().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (a.value_at(grid[i]) == b.value_at(grid[i])) return grid[i];
    if (i + 1 < grid.size()) {
      Time m = midpoint(grid[i], grid[i + 1]);
      if (a.value_at(m) == b.value_at(m)) return m;
    }
  }
  if (a.tail() && b.tail() && *a.tail() == *b.tail()) return a.end() + 1;
  return std::nullopt;
}

StepPath map_path(const MonotoneMap& f, const StepPath& g) {
  if (!(*f.domain == g.space())) throw PreconditionError("map domain differs from the path space");
  std::vector<Point> w, v;
  for (Point p : g.breakpoint_values()) w.push_back(f(p));
  for (Point p : g.interval_values()) v.push_back(f(p));
  std::optional<Point> tail;
  if (g.tail()) tail = f(*g.tail());
  return StepPath(f.codomain, g.times(), w, v, tail);
}

StepPath splice(const std::vector<StepPath>& paths) {
  if (paths.empty()) throw PreconditionError("nothing to splice");
  std::vector<Time> t = paths[0].times();
  std::vector<Point> w = paths[0].breakpoint_values(), v = paths[0].interval_values();
  for (std::size_t i = 1; i < paths.size(); ++i) {
    const StepPath& p = paths[i];
    if (p.start() != t.back()) throw DomainMismatch("spliced paths must share endpoints");
    if (p.breakpoint(0) != w.back())
      throw ContinuityViolation("junction values differ at t=" + to_string(p.start()),
                                static_cast<int>(t.size()) - 1);
    t.insert(t.end(), p.times().begin() + 1, p.times().end());
    w.insert(w.end(), p.breakpoint_values().begin() + 1, p.breakpoint_values().end());
    v.insert(v.end(), p.interval_values().begin(), p.interval_values().end());
  }
  return StepPath(paths[0].space_ptr(), t, w, v, paths.back().tail());
}

StepPath reverse(const StepPath& g) {
  std::vector<Time> t;
  for (auto it = g.times().rbegin(); it != g.times().rend(); ++it)
    t.push_back(g.start() + g.end() - *it);
  std::vector<Point> w(g.breakpoint_values().rbegin(), g.breakpoint_values().rend());
  std::vector<Point> v(g.interval_values().rbegin(), g.interval_values().rend());
  return StepPath(g.space_ptr(), t, w, v);
}

StepPath reparametrize(const StepPath& g, const Time& t0, const Time& t1) {
  if (!(t0 < t1)) throw NonMonotoneTimes("target domain must have positive length");
  Time scale = (t1 - t0) / (g.end() - g.start());
  std::vector<Time> t;
  for (const auto& s : g.times()) {
    Time u = t0 + (s - g.start()) * scale;
    u.canonicalize();
    t.push_back(u);
  }
  t.back() = t1;
  return StepPath(g.space_ptr(), t, g.breakpoint_values(), g.interval_values(), g.tail());
}

StepPath restrict(const StepPath& g, const Time& a, const Time& b) {
  if (a < g.start() || b > g.end() || !(a < b)) throw DomainMismatch("restriction window outside domain");
  PathBuilder pb(g.space_ptr());
  pb.point(a, g.value_at(a));
  for (std::size_t i = 0; i < g.times().size(); ++i) {
    const Time& t = g.times()[i];
    if (t <= a || t >= b) continue;
    pb.open(t, g.value_at(midpoint(pb.last_time(), t)));
    pb.point(t, g.breakpoint(static_cast<int>(i)));
  }
  pb.open(b, g.value_at(midpoint(pb.last_time(), b)));
  pb.point(b, g.value_at(b));
  return pb.build();
}

bool OpenCover::is_valid(const FinitePoset& x) const {
  PointSet u;
  for (PointSet m : members) {
    if (!x.is_open(m)) return false;
    u |= m;
  }
  return u == x.all() && names.size() == members.size();
}

namespace {

// Pieces: index 2i is breakpoint i, index 2i+1 the open cell after it.
int piece_of(const StepPath& g, const Time& t) {
  auto it = std::lower_bound(g.times().begin(), g.times().end(), t);
  int i = static_cast<int>(it - g.times().begin());
  if (*it == t) return 2 * i;
  return 2 * (i - 1) + 1;
}

Point piece_value(const StepPath& g, int p) {
  return p % 2 == 0 ? g.breakpoint(p / 2) : g.interval(p / 2);
}

}  // namespace

PointSet image_on(const StepPath& g, const Time& a, const Time& b) {
  PointSet s;
  int pa = piece_of(g, a), pb = piece_of(g, b);
  for (int p = pa; p <= pb; ++p) s.insert(piece_value(g, p));
  return s;
}

Subdivision minimal_admissible_subdivision(const StepPath& g, const OpenCover& cover) {
  if (!cover.is_valid(g.space())) throw PreconditionError("cover is not an open cover of the space");
  // Elementary pieces: each cell split at its midpoint, so every piece holds
  // one breakpoint value and the adjacent interval value and fits any member
  // containing that breakpoint value.
  std::vector<Time> cuts{g.start()};
  std::vector<PointSet> imgs;
  for (int i = 0; i < g.intervals(); ++i) {
    Time m = midpoint(g.time(i), g.time(i + 1));
    PointSet v = PointSet::single(g.interval(i));
    cuts.push_back(m);
    imgs.push_back(v | PointSet::single(g.breakpoint(i)));
    cuts.push_back(g.time(i + 1));
    imgs.push_back(v | PointSet::single(g.breakpoint(i + 1)));
  }
  auto fits = [&](PointSet img) {
    for (std::size_t j = 0; j < cover.members.size(); ++j)
      if (img.subset_of(cover.members[j])) return static_cast<int>(j);
    return -1;
  };
  Subdivision sub;
  sub.cuts.push_back(cuts.front());
  PointSet cur = imgs.front();
  for (std::size_t p = 1; p < imgs.size(); ++p) {
    if (fits(cur | imgs[p]) >= 0) {
      cur |= imgs[p];
      continue;
    }
    sub.members.push_back(fits(cur));
    sub.cuts.push_back(cuts[p]);
    cur = imgs[p];
  }
  sub.members.push_back(fits(cur));
  sub.cuts.push_back(g.end());
  return sub;
}

bool is_minimal_admissible(const StepPath& g, const OpenCover& cover, const Subdivision& s) {
  if (s.cuts.size() != s.members.size() + 1) return false;
  if (s.cuts.front() != g.start() || s.cuts.back() != g.end()) return false;
  std::vector<PointSet> imgs;
  for (int i = 0; i < s.size(); ++i) {
    if (!(s.cuts[i] < s.cuts[i + 1])) return false;
    PointSet img = image_on(g, s.cuts[i], s.cuts[i + 1]);
    if (!img.subset_of(cover.members[s.members[i]])) return false;
    imgs.push_back(img);
  }
  for (int i = 0; i + 1 < s.size(); ++i)
    for (PointSet m : cover.members)
      if ((imgs[i] | imgs[i + 1]).subset_of(m)) return false;
  return true;
}

std::vector<Run> runs_in(const StepPath& g, PointSet s) {
  std::vector<Run> out;
  const int last = 2 * g.intervals();
  auto piece_start = [&](int p) { return g.time(p / 2); };
  auto piece_end = [&](int p) { return p % 2 == 0 ? g.time(p / 2) : g.time(p / 2 + 1); };
  for (int p = 0; p <= last;) {
    if (!s.contains(piece_value(g, p))) {
      ++p;
      continue;
    }
    int q = p;
    while (q + 1 <= last && s.contains(piece_value(g, q + 1))) ++q;
    out.push_back({piece_start(p), piece_end(q), p % 2 == 0, q % 2 == 0});
    p = q + 1;
  }
  return out;
}

StepPath random_step_path(PosetPtr space, std::mt19937_64& rng, int max_intervals) {
  const FinitePoset& x = *space;
  std::uniform_int_distribution<int> kd(1, max_intervals), num(1, 5), den(1, 4);
  auto pick = [&](PointSet s) {
    std::vector<Point> v(s.begin(), s.end());
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  const int k = kd(rng);
  std::vector<Time> t{Time(0)};
  std::vector<Point> w{pick(x.all())}, v;
  for (int i = 0; i < k; ++i) {
    Time step(num(rng), den(rng));
    step.canonicalize();
    t.push_back(t.back() + step);
    v.push_back(pick(x.down(w.back())));
    w.push_back(pick(x.up(v.back())));
  }
  return StepPath(std::move(space), t, w, v);
}

std::vector<std::vector<Point>> all_value_sequences(const FinitePoset& x, int k) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    Point w = cur.back();
    for (Point v : x.down(w)) {
      cur.push_back(v);
      for (Point w2 : x.up(v)) {
        cur.push_back(w2);
        rec(remaining - 1);
        cur.pop_back();
      }
      cur.pop_back();
    }
  };
  for (Point w0 = 0; w0 < x.size(); ++w0) {
    cur = {w0};
    rec(k);
  }
  return out;
}

}  // namespace pursuit
