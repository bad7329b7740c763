#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "poset_pursuit/point_set.hpp"

namespace pursuit {

// A finite T0 space, stored as a partial order. Points are kept in
// lexicographic order of their names; a Point is an index into that order.
class FinitePoset {
 public:
  FinitePoset() = default;

  // `relations` holds pairs (x, y) meaning x <= y. Throws PreconditionError
  // when the reflexive-transitive closure is not antisymmetric.
  FinitePoset(std::vector<std::string> names,
              const std::vector<std::pair<std::string, std::string>>& relations);

  // down[i] must list every j <= i (any superset of the covers works, the
  // closure is recomputed).
  static FinitePoset from_down_sets(std::vector<std::string> names,
                                    const std::vector<PointSet>& down);

  int size() const { return static_cast<int>(names_.size()); }
  PointSet all() const { return PointSet::first_n(size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Point p) const { return names_.at(p); }
  std::optional<Point> find(std::string_view name) const;
  Point at(std::string_view name) const;  // throws PreconditionError

  bool leq(Point x, Point y) const { return down_[y].contains(x); }
  bool less(Point x, Point y) const { return x != y && leq(x, y); }
  bool comparable(Point x, Point y) const { return leq(x, y) || leq(y, x); }

  PointSet down(Point x) const { return down_[x]; }
  PointSet up(Point x) const { return up_[x]; }
  PointSet down_closure(PointSet s) const;
  PointSet up_closure(PointSet s) const;
  bool is_open(PointSet s) const { return down_closure(s) == s; }

  PointSet maximal() const { return maximal_; }
  PointSet minimal() const { return minimal_; }
  bool is_extremal(Point x) const { return maximal_.contains(x) || minimal_.contains(x); }
  std::optional<Point> maximum() const;
  std::optional<Point> minimum() const;

  int height() const { return height_; }
  // Length of the longest chain ending at x, minus one.
  int rank(Point x) const { return rank_[x]; }

  // Hasse edges as (lower, upper).
  const std::vector<std::pair<Point, Point>>& covers() const { return covers_; }
  PointSet upper_covers(Point x) const { return upper_covers_[x]; }
  PointSet lower_covers(Point x) const { return lower_covers_[x]; }
  PointSet hasse_neighbours(Point x) const { return upper_covers_[x] | lower_covers_[x]; }

  std::vector<std::pair<std::string, std::string>> relation_names() const;
  std::string describe() const;

  bool operator==(const FinitePoset& o) const {
    return names_ == o.names_ && down_ == o.down_;
  }

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<PointSet> down_, up_, upper_covers_, lower_covers_;
  std::vector<int> rank_;
  std::vector<std::pair<Point, Point>> covers_;
  PointSet maximal_, minimal_;
  int height_ = -1;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

inline PosetPtr share(FinitePoset p) { return std::make_shared<const FinitePoset>(std::move(p)); }

// Raw relational input, possibly not antisymmetric.
struct PreorderInput {
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> relations;  // (x, y): x <= y
};

// A preorder that failed antisymmetry, together with the fixed-point-free
// continuous self-map sending x to y and everything else to x.
struct NonT0Report {
  std::vector<std::string> points;            // lexicographic order
  std::vector<std::vector<bool>> leq;         // closure of the input relation
  std::string x, y;                           // x <= y <= x, x != y
  std::vector<std::pair<std::string, std::string>> map;

  bool map_is_continuous() const;
  bool map_is_fixed_point_free() const;
  // Image of a sequence of point names under the map.
  std::vector<std::string> apply(const std::vector<std::string>& values) const;
};

using PosetOrReport = std::variant<FinitePoset, NonT0Report>;

// Throws ParseError on dangling references or duplicate identifiers.
PosetOrReport from_relations(const PreorderInput& input);

// An induced subspace together with the inclusion into its parent.
struct Subspace {
  FinitePoset space;
  std::vector<Point> to_parent;
  std::vector<Point> from_parent;  // -1 outside the subspace
};

Subspace induced(const FinitePoset& x, PointSet keep);
FinitePoset opposite(const FinitePoset& x);
// Maximal and minimal points with the induced order.
Subspace extrema(const FinitePoset& x);

std::vector<PointSet> components(const FinitePoset& x, PointSet within);
inline std::vector<PointSet> components(const FinitePoset& x) { return components(x, x.all()); }
bool is_connected(const FinitePoset& x);
// A shortest fence from a to b in the subspace `within`, if any.
std::optional<std::vector<Point>> fence_between(const FinitePoset& x, Point a, Point b,
                                                PointSet within);
std::optional<std::vector<Point>> fence_between(const FinitePoset& x, Point a, Point b);

// Adds a fresh point below (or above) `anchor`. The returned name is unique.
std::pair<FinitePoset, std::string> with_new_point(const FinitePoset& x, const std::string& base,
                                                   const std::string& anchor, bool below);

}  // namespace pursuit
