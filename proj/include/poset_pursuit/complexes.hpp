#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/point_set.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/rational.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

// A finite abstract simplicial complex on at most 64 named vertices. A
// simplex is a set of vertex indices.
class SimplicialComplex {
 public:
  // Adds every nonempty subset of each listed face, and every vertex.
  SimplicialComplex(std::vector<std::string> vertices, const std::vector<PointSet>& faces);
  static SimplicialComplex from_names(std::vector<std::string> vertices,
                                      const std::vector<std::vector<std::string>>& faces);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  // Sorted by size, then by bit pattern.
  const std::vector<PointSet>& simplices() const { return simplices_; }
  bool contains(PointSet s) const;
  int dimension() const;
  // f[k] = number of k-dimensional simplices.
  std::vector<long> f_vector() const;
  std::string simplex_name(PointSet s) const;  // "{a,b}"

  bool operator==(const SimplicialComplex& o) const {
    return vertices_ == o.vertices_ && simplices_ == o.simplices_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<PointSet> simplices_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

// Simplices are the nonempty chains of x; vertex i is point i of x.
SimplicialComplex order_complex(const FinitePoset& x);
// Simplices ordered by inclusion, named as in simplex_name.
FinitePoset face_poset(const SimplicialComplex& k);

// A path in the geometric realization, recorded by the open simplex it
// visits: simplex `breakpoints[i]` at times[i] and `intervals[i]` on
// (times[i], times[i+1]). Each breakpoint simplex is a face of its
// neighbouring interval simplices.
class SimplicialPath {
 public:
  SimplicialPath(ComplexPtr complex, std::vector<Time> times, std::vector<PointSet> breakpoints,
                 std::vector<PointSet> intervals, std::optional<PointSet> tail = std::nullopt);

  const SimplicialComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  int intervals() const { return static_cast<int>(intervals_.size()); }
  const std::vector<Time>& times() const { return times_; }
  const std::vector<PointSet>& breakpoint_simplices() const { return breakpoints_; }
  const std::vector<PointSet>& interval_simplices() const { return intervals_; }
  const std::optional<PointSet>& tail() const { return tail_; }

  // Merges pieces that stay in one simplex.
  SimplicialPath normalized() const;
  std::string describe() const;

 private:
  ComplexPtr complex_;
  std::vector<Time> times_;
  std::vector<PointSet> breakpoints_, intervals_;
  std::optional<PointSet> tail_;
};

// Sends each simplex (a chain of x) to its least element.
StepPath mu_project(const PosetPtr& x, const SimplicialPath& p);
// A path in the order complex whose projection is g: on each interval it
// crosses the edge from the left breakpoint value, dwells at the interval
// value and leaves along the edge to the right breakpoint value.
SimplicialPath lift_step_path(const ComplexPtr& order_complex_of_x, const StepPath& g);
SimplicialPath lift_step_path(const StepPath& g);

// Rooms of a gallery: cells with a dimension, ordered by the face relation.
struct CellPoset {
  FinitePoset poset;
  std::vector<int> dim;  // per point of `poset`
  bool reconstructed = false;

  static CellPoset from_faces(const std::vector<std::pair<std::string, int>>& cells,
                              const std::vector<std::pair<std::string, std::string>>& faces);
  // Empty when the grading strictly increases along the order.
  std::string violation() const;
  // Covers that skip a dimension (cells missing from the gallery).
  std::vector<std::pair<Point, Point>> dimension_gaps() const;
  // Rooms per dimension, index = dimension.
  std::vector<int> room_counts() const;
};

// Shipped galleries: "segment", "gallery-1", "gallery-2", "gallery-3".
CellPoset gallery(std::string_view name);
std::vector<std::string> gallery_names();

// Rooms ordered by the coface relation.
FinitePoset gallery_space(const CellPoset& s);

struct WatcherVerdict {
  Verdict verdict;
  std::string winner() const;  // "watcher", "thief" or "unknown"
  std::string report;
};
WatcherVerdict watcher_decide(const CellPoset& s, const ClassifyOptions& opts = {});

}  // namespace pursuit
