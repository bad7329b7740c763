#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "poset_pursuit/maps.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/rational.hpp"

namespace pursuit {

// A continuous path with finitely many breakpoints t_0 < ... < t_k.
// breakpoint(i) is the value at t_i, interval(i) the value on (t_i, t_{i+1}).
// An optional tail value marks a curve that stays constant after t_k.
class StepPath {
 public:
  // Throws NonMonotoneTimes or ContinuityViolation.
  StepPath(PosetPtr space, std::vector<Time> times, std::vector<Point> breakpoints,
           std::vector<Point> intervals, std::optional<Point> tail = std::nullopt);

  static StepPath constant(PosetPtr space, Point value, const Time& t0, const Time& t1);
  // Unit-spaced times starting at t0; seq = w0, v1, w1, ..., vk, wk.
  static StepPath from_sequence(PosetPtr space, const std::vector<Point>& seq, const Time& t0 = 0);

  const FinitePoset& space() const { return *space_; }
  const PosetPtr& space_ptr() const { return space_; }
  int intervals() const { return static_cast<int>(intervals_.size()); }
  const std::vector<Time>& times() const { return times_; }
  const Time& time(int i) const { return times_[i]; }
  Point breakpoint(int i) const { return breakpoints_[i]; }
  Point interval(int i) const { return intervals_[i]; }
  const std::vector<Point>& breakpoint_values() const { return breakpoints_; }
  const std::vector<Point>& interval_values() const { return intervals_; }
  const std::optional<Point>& tail() const { return tail_; }
  const Time& start() const { return times_.front(); }
  const Time& end() const { return times_.back(); }

  Point value_at(const Time& t) const;
  // w0, v1, w1, ..., vk, wk
  std::vector<Point> value_sequence() const;
  PointSet image() const;
  // Merges adjacent pieces that carry the same value.
  StepPath normalized() const;
  // Same function on the same domain.
  bool same_function(const StepPath& other) const;
  bool operator==(const StepPath& o) const;

  std::string describe() const;

 private:
  PosetPtr space_;
  std::vector<Time> times_;
  std::vector<Point> breakpoints_, intervals_;
  std::optional<Point> tail_;
};

// Accumulates a path left to right from points and open pieces.
class PathBuilder {
 public:
  explicit PathBuilder(PosetPtr space) : space_(std::move(space)) {}
  // Instants at equal times must agree; a repeated instant is ignored.
  PathBuilder& point(const Time& t, Point v);
  PathBuilder& open(const Time& to, Point v);  // from the last point up to `to`
  PathBuilder& closed(const Time& from, const Time& to, Point v);
  bool empty() const { return times_.empty(); }
  const Time& last_time() const { return times_.back(); }
  StepPath build() const;

 private:
  PosetPtr space_;
  std::vector<Time> times_;
  std::vector<Point> points_, opens_;
  Time pending_end_;
};

std::optional<Time> coincidence_step(const StepPath& a, const StepPath& b);
StepPath map_path(const MonotoneMap& f, const StepPath& g);
StepPath splice(const std::vector<StepPath>& paths);
StepPath reverse(const StepPath& g);
StepPath reparametrize(const StepPath& g, const Time& t0, const Time& t1);
// Restriction to [a, b] inside the domain.
StepPath restrict(const StepPath& g, const Time& a, const Time& b);

struct OpenCover {
  std::vector<std::string> names;
  std::vector<PointSet> members;
  bool is_valid(const FinitePoset& x) const;
};

struct Subdivision {
  std::vector<Time> cuts;     // t_0 < ... < t_N, first and last are the domain ends
  std::vector<int> members;   // member index per closed interval [cuts[i], cuts[i+1]]
  int size() const { return static_cast<int>(members.size()); }
};

Subdivision minimal_admissible_subdivision(const StepPath& g, const OpenCover& cover);
// Every interval image inside its member and no adjacent pair fits one member.
bool is_minimal_admissible(const StepPath& g, const OpenCover& cover, const Subdivision& s);

// Values taken on the closed window [a, b].
PointSet image_on(const StepPath& g, const Time& a, const Time& b);

// Maximal open runs of γ inside a set S: (start, end) with γ((start,end)) ⊆ S,
// both ends outside S or the domain boundary.
struct Run {
  Time from, to;
  bool from_closed, to_closed;
};
std::vector<Run> runs_in(const StepPath& g, PointSet s);

// Random valid path with k intervals on integer-spaced or random rational times.
StepPath random_step_path(PosetPtr space, std::mt19937_64& rng, int max_intervals = 6);

// Every value sequence w0 v1 w1 ... vk wk with exactly k intervals.
std::vector<std::vector<Point>> all_value_sequences(const FinitePoset& x, int k);

}  // namespace pursuit
