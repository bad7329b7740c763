#include "poset_pursuit/responders.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/extrema.hpp"
#include "poset_pursuit/verifier.hpp"

namespace pursuit {

std::string to_string(ResponderKind k) {
  switch (k) {
    case ResponderKind::FPFMap: return "FPFMap";
    case ResponderKind::FourCover: return "FourCover";
    case ResponderKind::S21: return "S21";
    case ResponderKind::S30op: return "S30op";
    case ResponderKind::Yoke: return "Yoke";
    case ResponderKind::Retract: return "Retract";
    case ResponderKind::Extrema: return "Extrema";
    case ResponderKind::DP: return "DP";
  }
  return "?";
}

namespace {

std::atomic<bool> g_posthoc{true};

// Piecewise description of a robber path: values at instants and on open
// stretches, assembled and validated at the end.
class Sketch {
 public:
  explicit Sketch(PosetPtr x) : x_(std::move(x)) {}

  void point(const Time& t, Point v) {
    auto [it, fresh] = points_.emplace(t, v);
    if (!fresh && it->second != v)
      throw Error("responder assigned two values at t=" + to_string(t));
  }
  void open(const Time& a, const Time& b, Point v) {
    if (a < b) opens_.push_back({a, b, v});
  }
  void closed(const Time& a, const Time& b, Point v) {
    point(a, v);
    point(b, v);
    open(a, b, v);
  }
  // A fence traversal from its first to its last point over [a, b].
  void fence(const Time& a, const Time& b, const std::vector<Point>& f) {
    if (f.size() == 1) return closed(a, b, f.front());
    const long steps = static_cast<long>(f.size() - 1);
    for (long i = 0; i < steps; ++i) {
      Time u = a + (b - a) * Time(i, steps), w = a + (b - a) * Time(i + 1, steps);
      u.canonicalize();
      w.canonicalize();
      point(u, f[i]);
      open(u, w, x_->leq(f[i], f[i + 1]) ? f[i] : f[i + 1]);
    }
    point(b, f.back());
  }

  StepPath build() const {
    std::vector<Time> times;
    std::vector<Point> w, v;
    for (auto& [t, p] : points_) {
      times.push_back(t);
      w.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      std::optional<Point> val;
      for (auto& o : opens_)
        if (o.a <= times[i] && times[i + 1] <= o.b) {
          if (val && *val != o.v) throw Error("responder assigned two values on an open stretch");
          val = o.v;
        }
      if (!val) throw Error("responder left a gap at t=" + to_string(times[i]));
      v.push_back(*val);
    }
    return StepPath(x_, times, w, v).normalized();
  }

 private:
  struct Open {
    Time a, b;
    Point v;
  };
  PosetPtr x_;
  std::map<Time, Point> points_;
  std::vector<Open> opens_;
};

// Values of g on the open window (a, b).
PointSet image_open(const StepPath& g, const Time& a, const Time& b) {
  PointSet s;
  for (int i = 0; i <= g.intervals(); ++i) {
    if (a < g.time(i) && g.time(i) < b) s.insert(g.breakpoint(i));
    if (i < g.intervals() && g.time(i) < b && a < g.time(i + 1)) s.insert(g.interval(i));
  }
  return s;
}

// The maximal run of g inside s containing t.
std::optional<Run> run_through(const StepPath& g, PointSet s, const Time& t) {
  for (auto& r : runs_in(g, s))
    if ((r.from < t || (r.from == t && r.from_closed)) && (t < r.to || (t == r.to && r.to_closed)))
      return r;
  return std::nullopt;
}

// First open piece of g valued v meeting (a, b), clipped to (a, b).
std::optional<std::pair<Time, Time>> first_piece(const StepPath& g, Point v, const Time& a, const Time& b) {
  for (int i = 0; i < g.intervals(); ++i)
    if (g.interval(i) == v && g.time(i) < b && a < g.time(i + 1))
      return std::pair{std::max(a, g.time(i)), std::min(b, g.time(i + 1))};
  return std::nullopt;
}

void require_compact(const StepPath& cop) {
  if (cop.tail()) throw PreconditionError("this responder handles compact-domain cop paths only");
}

class FpfResponder final : public Responder {
 public:
  explicit FpfResponder(MonotoneMap f) : Responder(f.domain), f_(std::move(f)) {
    if (!f_.is_self_map() || !f_.is_monotone()) throw PreconditionError("map is not a continuous self-map");
    if (!f_.is_fixed_point_free()) throw PreconditionError("map has a fixed point");
  }
  ResponderKind kind() const override { return ResponderKind::FPFMap; }
  std::string describe() const override {
    std::string s = "fixed-point-free map {";
    for (Point p = 0; p < space()->size(); ++p)
      s += (p ? ", " : "") + space()->name(p) + "->" + space()->name(f_(p));
    return s + "}";
  }

 protected:
  StepPath do_respond(const StepPath& cop) const override { return map_path(f_, cop); }

 private:
  MonotoneMap f_;
};

class FourCoverResponder final : public Responder {
 public:
  explicit FourCoverResponder(FourCoverSetup s) : Responder(s.space), s_(std::move(s)) {
    if (auto v = s_.violation(); !v.empty()) throw PreconditionError("invalid four-cover setup: " + v);
  }
  ResponderKind kind() const override { return ResponderKind::FourCover; }
  std::string describe() const override { return "four-cover escape"; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    require_compact(cop);
    OpenCover cover{{"A0", "A1", "A2", "B"}, {s_.a_sets[0], s_.a_sets[1], s_.a_sets[2], s_.b_set}};
    Subdivision sub = minimal_admissible_subdivision(cop, cover);
    const int n = sub.size();
    auto mid = [&](int k) { return midpoint(sub.cuts[k], sub.cuts[k + 1]); };
    auto pick = [](std::initializer_list<int> avoid) {
      for (int k = 0; k < 3; ++k)
        if (std::find(avoid.begin(), avoid.end(), k) == avoid.end()) return k;
      return 0;
    };
    auto reversed = [](std::vector<Point> f) {
      std::reverse(f.begin(), f.end());
      return f;
    };
    Sketch r(space());
    if (n == 1) {
      r.closed(cop.start(), cop.end(), sub.members[0] == 3 ? s_.a_points[0] : s_.b_point);
      return r.build();
    }
    for (int k = 0; k < n; ++k) {
      const Time& lo = sub.cuts[k];
      const Time& hi = sub.cuts[k + 1];
      if (sub.members[k] != 3) {
        // Only the outer halves of the first and last intervals are left.
        if (k == 0) r.closed(lo, mid(k), s_.b_point);
        if (k == n - 1) r.closed(mid(k), hi, s_.b_point);
        continue;
      }
      const bool has_left = k > 0, has_right = k + 1 < n;
      int i = has_left ? sub.members[k - 1] : -1, j = has_right ? sub.members[k + 1] : -1;
      int c = pick({i, j});
      const auto& w = s_.fences[c];
      if (has_left)
        r.fence(mid(k - 1), lo, w);
      r.closed(lo, hi, s_.a_points[c]);
      if (has_right) r.fence(hi, mid(k + 1), reversed(w));
    }
    return r.build();
  }

 private:
  FourCoverSetup s_;
};

class S21Responder final : public Responder {
 public:
  explicit S21Responder(PosetPtr x) : Responder(std::move(x)) {
    if (!(*space() == catalog("S21"))) throw PreconditionError("S21 responder needs the S21 space");
  }
  ResponderKind kind() const override { return ResponderKind::S21; }
  std::string describe() const override { return "S21 ladder escape"; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    require_compact(cop);
    const FinitePoset& x = *space();
    auto P = [&](const char* n) { return x.at(n); };
    const Point hub = P("0"), tail = P("3");
    auto other = [&](Point i) { return i == P("1") ? P("2") : P("1"); };
    auto prime = [&](Point i) { return i == P("1") ? P("1'") : P("2'"); };
    OpenCover cover{{"U0", "U1'", "U2'"}, {x.down(hub), x.down(P("1'")), x.down(P("2'"))}};
    Subdivision sub = minimal_admissible_subdivision(cop, cover);
    const int n = sub.size();
    Sketch r(space());
    for (int k = 0; k < n; ++k) {
      const Time t1 = sub.cuts[k], t2 = sub.cuts[k + 1];
      if (sub.members[k] != 0) {
        r.closed(t1, t2, tail);
        continue;
      }
      const bool has_left = k > 0, has_right = k + 1 < n;
      if (!has_left && !has_right) {
        r.closed(t1, t2, P("1'"));
        continue;
      }
      // s0: end of the opening i-run; s3: start of the closing j-run.
      Time s0, s3;
      Point i = -1, j = -1;
      if (has_left) {
        i = cop.value_at(t1);
        s0 = std::min(run_through(cop, PointSet::single(i), t1)->to, t2);
      }
      if (has_right) {
        j = cop.value_at(t2);
        s3 = std::max(run_through(cop, PointSet::single(j), t2)->from, t1);
      }
      auto at = [](const Time& a, const Time& b, long num, long den) {
        Time t = a + (b - a) * Time(num, den);
        t.canonicalize();
        return t;
      };
      if (has_left && has_right) {
        auto three = first_piece(cop, tail, t1, t2);
        if (!three) {
          r.closed(t1, t2, tail);
          continue;
        }
        auto [s1, s2] = *three;
        Time r0 = at(t1, s0, 1, 4), r1 = at(t1, s0, 1, 2);
        Time r2 = at(s1, s2, 1, 4), r3 = at(s1, s2, 1, 2), r4 = at(s1, s2, 3, 4);
        Time r5 = at(s3, t2, 1, 2), r6 = at(s3, t2, 3, 4);
        r.point(t1, tail);
        r.open(t1, r0, tail);
        r.point(r0, hub);
        r.open(r0, r1, other(i));
        r.closed(r1, r2, prime(other(i)));
        r.open(r2, r3, other(i));
        r.point(r3, hub);
        r.open(r3, r4, other(j));
        r.closed(r4, r5, prime(other(j)));
        r.open(r5, r6, other(j));
        r.point(r6, hub);
        r.open(r6, t2, tail);
        r.point(t2, tail);
      } else if (has_right) {
        Time r5 = at(s3, t2, 1, 2), r6 = at(s3, t2, 3, 4);
        r.closed(t1, r5, prime(other(j)));
        r.open(r5, r6, other(j));
        r.point(r6, hub);
        r.open(r6, t2, tail);
        r.point(t2, tail);
      } else {
        Time r0 = at(t1, s0, 1, 4), r1 = at(t1, s0, 1, 2);
        r.point(t1, tail);
        r.open(t1, r0, tail);
        r.point(r0, hub);
        r.open(r0, r1, other(i));
        r.closed(r1, t2, prime(other(i)));
      }
    }
    return r.build();
  }
};

class S30opResponder final : public Responder {
 public:
  explicit S30opResponder(PosetPtr x) : Responder(std::move(x)) {
    if (!(*space() == catalog("S30op"))) throw PreconditionError("S30op responder needs the S30op space");
  }
  ResponderKind kind() const override { return ResponderKind::S30op; }
  std::string describe() const override { return "S30op special-interval escape"; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    require_compact(cop);
    const FinitePoset& x = *space();
    const std::array<Point, 3> arm{x.at("1"), x.at("2"), x.at("3")};
    const std::array<Point, 3> tip{x.at("1'"), x.at("2'"), x.at("3'")};
    const Point hub = x.at("0");
    PointSet tips;
    for (Point p : tip) tips.insert(p);
    OpenCover cover{{"U1", "U2", "U3"}, {x.down(arm[0]), x.down(arm[1]), x.down(arm[2])}};
    Subdivision sub = minimal_admissible_subdivision(cop, cover);

    struct Chosen {
      Time s0, s1;
      int arm;
    };
    std::vector<Chosen> runs;
    for (int k = 0; k < sub.size(); ++k) {
      const Time &lo = sub.cuts[k], &hi = sub.cuts[k + 1];
      PointSet img = image_on(cop, lo, hi) & tips;
      if (img.empty()) continue;
      int i = 0;
      while (!img.contains(tip[i])) ++i;
      for (auto& run : runs_in(cop, PointSet::single(tip[i]))) {
        if (run.to <= lo || hi <= run.from) continue;
        runs.push_back({std::max(run.from, lo), std::min(run.to, hi), i});
        break;
      }
    }
    Sketch r(space());
    if (runs.empty()) {
      r.closed(cop.start(), cop.end(), tip[0]);
      return r.build();
    }
    auto least_except = [](int i, int j) {
      for (int k = 0; k < 3; ++k)
        if (k != i && k != j) return k;
      return 0;
    };
    // gap[p] is the arm used before run p (p = 0) or between runs p-1 and p.
    std::vector<int> gap(runs.size() + 1);
    gap[0] = least_except(runs.front().arm, runs.front().arm);
    for (std::size_t p = 1; p < runs.size(); ++p) gap[p] = least_except(runs[p - 1].arm, runs[p].arm);
    gap.back() = least_except(runs.back().arm, runs.back().arm);

    r.closed(cop.start(), runs.front().s0, tip[gap[0]]);
    for (std::size_t p = 0; p < runs.size(); ++p) {
      int k = gap[p], l = gap[p + 1];
      if (k == l)
        r.closed(runs[p].s0, runs[p].s1, tip[k]);
      else
        r.fence(runs[p].s0, runs[p].s1, {tip[k], arm[k], hub, arm[l], tip[l]});
      Time next = p + 1 < runs.size() ? runs[p + 1].s0 : cop.end();
      r.closed(runs[p].s1, next, tip[l]);
    }
    return r.build();
  }
};

class YokeResponder final : public Responder {
 public:
  explicit YokeResponder(PosetPtr x) : Responder(std::move(x)) {
    if (!(*space() == catalog("Yoke"))) throw PreconditionError("yoke responder needs the yoke space");
  }
  ResponderKind kind() const override { return ResponderKind::Yoke; }
  std::string describe() const override { return "yoke escape"; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    require_compact(cop);
    const FinitePoset& x = *space();
    const Point a = x.at("a"), b = x.at("b"), c = x.at("c"), d = x.at("d");
    OpenCover cover{{"Ua", "Ub"}, {x.down(a), x.down(b)}};
    Subdivision sub = minimal_admissible_subdivision(cop, cover);
    const int n = sub.size();
    auto away = [&](int k) { return sub.members[k] == 0 ? b : a; };
    auto mid = [&](int k) { return midpoint(sub.cuts[k], sub.cuts[k + 1]); };
    Sketch r(space());
    if (n == 1) {
      r.closed(cop.start(), cop.end(), away(0));
      return r.build();
    }
    r.closed(cop.start(), mid(0), away(0));
    r.closed(mid(n - 1), cop.end(), away(n - 1));
    const PointSet low = PointSet::single(c) | PointSet::single(d);
    for (int k = 1; k < n; ++k) {
      const Time t1 = sub.cuts[k], m0 = mid(k - 1), m1 = mid(k);
      Run run = *run_through(cop, low, t1);
      Time s0 = midpoint(std::max(run.from, m0), t1), s1 = midpoint(t1, std::min(run.to, m1));
      Point before = away(k - 1), after = away(k);
      if (!image_open(cop, s0, s1).contains(d)) {
        r.closed(m0, s0, before);
        r.open(s0, s1, d);
        r.closed(s1, m1, after);
      } else {
        auto [r0, r1] = *first_piece(cop, d, s0, s1);
        r.closed(m0, r0, before);
        r.open(r0, r1, c);
        r.closed(r1, m1, after);
      }
    }
    return r.build();
  }
};

class RetractResponder final : public Responder {
 public:
  RetractResponder(MonotoneMap to, MonotoneMap from, ResponderPtr inner)
      : Responder(to.domain), to_(std::move(to)), from_(std::move(from)), inner_(std::move(inner)) {
    if (!to_.is_monotone() || !from_.is_monotone()) throw PreconditionError("retract maps must be continuous");
    if (!(*to_.codomain == *inner_->space()) || !(*from_.domain == *inner_->space()) ||
        !(*from_.codomain == *space()))
      throw PreconditionError("retract maps do not match the inner responder's space");
    for (Point p = 0; p < inner_->space()->size(); ++p)
      if (to_(from_(p)) != p) throw PreconditionError("maps do not form a retraction");
  }
  ResponderKind kind() const override { return ResponderKind::Retract; }
  std::string describe() const override { return "retract onto a subspace, then " + inner_->describe(); }
  const ResponderPtr& inner() const { return inner_; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    StepPath projected = map_path(to_, cop);
    StepPath inner_path(inner_->space(), projected.times(), projected.breakpoint_values(),
                        projected.interval_values(), projected.tail());
    return map_path(from_, inner_->respond(inner_path));
  }

 private:
  MonotoneMap to_, from_;
  ResponderPtr inner_;
};

class ExtremaResponder final : public Responder {
 public:
  ExtremaResponder(PosetPtr x, ResponderPtr inner) : Responder(std::move(x)), inner_(std::move(inner)) {
    Subspace e = extrema(*space());
    if (!(e.space == *inner_->space()))
      throw PreconditionError("inner responder must live on the extrema subspace");
    include_ = MonotoneMap{inner_->space(), space(), e.to_parent};
  }
  ResponderKind kind() const override { return ResponderKind::Extrema; }
  std::string describe() const override { return "project to extrema, then " + inner_->describe(); }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    require_compact(cop);
    ReducedPath red = project_to_extrema(space(), cop);
    const StepPath& p = red.path;
    StepPath inner_path(inner_->space(), p.times(), p.breakpoint_values(), p.interval_values());
    return map_path(include_, inner_->respond(inner_path));
  }

 private:
  ResponderPtr inner_;
  MonotoneMap include_;
};

class DpResponder final : public Responder {
 public:
  explicit DpResponder(PosetPtr x) : Responder(std::move(x)) {}
  ResponderKind kind() const override { return ResponderKind::DP; }
  std::string describe() const override { return "layered search escape"; }

 protected:
  StepPath do_respond(const StepPath& cop) const override {
    auto r = respond_dp(cop);
    if (!r) throw NoEscape("no escape exists against this cop path");
    return *r;
  }
};

}  // namespace

void Responder::set_posthoc_checks(bool on) { g_posthoc = on; }
bool Responder::posthoc_checks() { return g_posthoc; }

StepPath Responder::respond(const StepPath& cop) const {
  if (!(cop.space() == *space_)) throw DomainMismatch("cop path lives in another space");
  StepPath out = do_respond(cop);
  if (g_posthoc) {
    if (out.start() != cop.start() || out.end() != cop.end())
      throw Error(to_string(kind()) + " responder changed the time domain");
    if (auto t = coincidence_step(cop, out))
      throw Error(to_string(kind()) + " responder coincides with the cop at t=" + to_string(*t));
  }
  return out;
}

std::string FourCoverSetup::violation() const {
  if (!space) return "no space";
  const FinitePoset& x = *space;
  PointSet all = b_set;
  for (int i = 0; i < 3; ++i) {
    if (!x.is_open(a_sets[i])) return "A" + std::to_string(i) + " is not open";
    all |= a_sets[i];
    for (int j = i + 1; j < 3; ++j)
      if (a_sets[i].intersects(a_sets[j])) return "A sets are not disjoint";
    if (!a_sets[i].contains(a_points[i]) || b_set.contains(a_points[i]))
      return "a" + std::to_string(i) + " must lie in A" + std::to_string(i) + " but not in B";
    const auto& f = fences[i];
    if (f.empty() || f.front() != b_point || f.back() != a_points[i])
      return "fence " + std::to_string(i) + " must run from b to a" + std::to_string(i);
    for (std::size_t k = 0; k + 1 < f.size(); ++k)
      if (!x.comparable(f[k], f[k + 1])) return "fence " + std::to_string(i) + " is broken";
    for (Point p : f)
      for (int j = 0; j < 3; ++j)
        if (j != i && a_sets[j].contains(p)) return "fence " + std::to_string(i) + " meets A" + std::to_string(j);
  }
  if (!x.is_open(b_set)) return "B is not open";
  if (!b_set.contains(b_point)) return "b must lie in B";
  if (all != x.all()) return "the four sets do not cover the space";
  return "";
}

FourCoverSetup s30_four_cover_setup(const PosetPtr& xp) {
  const FinitePoset& x = *xp;
  FourCoverSetup s;
  s.space = xp;
  s.b_point = x.at("0");
  s.b_set = x.all();
  for (int i = 0; i < 3; ++i) {
    std::string arm = std::to_string(i + 1);
    Point tip = x.at(arm + "'");
    s.a_sets[i] = x.down(tip);
    s.a_points[i] = tip;
    s.b_set.erase(tip);
    s.fences[i] = {s.b_point, x.at(arm), tip};
  }
  return s;
}

ResponderPtr make_fpf_responder(MonotoneMap f) { return std::make_shared<FpfResponder>(std::move(f)); }

ResponderPtr make_four_cover_responder(FourCoverSetup setup) {
  return std::make_shared<FourCoverResponder>(std::move(setup));
}

ResponderPtr make_catalog_responder(ResponderKind kind, PosetPtr space) {
  switch (kind) {
    case ResponderKind::S21: return std::make_shared<S21Responder>(std::move(space));
    case ResponderKind::S30op: return std::make_shared<S30opResponder>(std::move(space));
    case ResponderKind::Yoke: return std::make_shared<YokeResponder>(std::move(space));
    default: throw PreconditionError("not a catalog responder kind: " + to_string(kind));
  }
}

ResponderPtr make_retract_responder(MonotoneMap to_inner, MonotoneMap from_inner, ResponderPtr inner) {
  return std::make_shared<RetractResponder>(std::move(to_inner), std::move(from_inner), std::move(inner));
}

ResponderPtr make_retract_responder(const MonotoneMap& r, ResponderPtr inner) {
  if (!r.is_retraction()) throw PreconditionError("map is not a retraction");
  Subspace a = induced(*r.domain, r.image_set());
  if (!(a.space == *inner->space())) throw PreconditionError("inner responder must live on the image");
  MonotoneMap to{r.domain, inner->space(), std::vector<Point>(r.domain->size())};
  for (Point p = 0; p < r.domain->size(); ++p) to.image[p] = a.from_parent[r(p)];
  MonotoneMap from{inner->space(), r.domain, a.to_parent};
  return make_retract_responder(std::move(to), std::move(from), std::move(inner));
}

ResponderPtr make_retract_responder(const MonotoneMap& r, const Embedding& e, ResponderPtr inner) {
  if (!r.is_retraction() || r.image_set() != e.image())
    throw PreconditionError("map is not a retraction onto the embedded copy");
  std::vector<Point> back(r.domain->size(), -1);
  for (Point s = 0; s < e.source->size(); ++s) back[e.map[s]] = s;
  MonotoneMap to{r.domain, e.source, std::vector<Point>(r.domain->size())};
  for (Point p = 0; p < r.domain->size(); ++p) to.image[p] = back[r(p)];
  return make_retract_responder(std::move(to), e.as_map(), std::move(inner));
}

ResponderPtr make_extrema_responder(PosetPtr x, ResponderPtr inner) {
  return std::make_shared<ExtremaResponder>(std::move(x), std::move(inner));
}

ResponderPtr make_dp_responder(PosetPtr x) { return std::make_shared<DpResponder>(std::move(x)); }

StepPath respond_fpf(const MonotoneMap& f, const StepPath& cop) {
  return make_fpf_responder(f)->respond(cop);
}

std::optional<StepPath> respond_dp(const StepPath& cop) {
  auto w = escape_exists(cop.space(), cop);
  if (!w) return std::nullopt;
  return realize_escape(cop, *w);
}

}  // namespace pursuit
