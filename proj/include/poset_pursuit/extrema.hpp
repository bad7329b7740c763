#pragma once

#include <vector>

#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

// Bookkeeping for removing one intermediate point a from a path.
struct EliminationPlan {
  Point a = -1;
  PointSet f_hat;  // maximal points above a
  Point b = -1;    // least-named minimal point below a
  std::vector<Run> components;  // components of γ^{-1}(a)
  std::vector<bool> open_type;  // per component: true for an open interval
  std::vector<Point> replacement;  // new value per component
  struct Margin {
    Time t;
    Point right_of, left_of;  // right margin for the first, left margin for the second
  };
  std::vector<Margin> margins;
};

// A path moved into a subspace of the original space.
struct ReducedPath {
  PosetPtr space;
  std::vector<Point> to_parent;
  StepPath path;
  // The same path with values read in the parent space.
  StepPath in_parent(const PosetPtr& parent) const;
};

// Candidate points for elimination: neither maximal nor minimal, covered
// only by maximal points.
bool eliminable(const FinitePoset& x, Point a);

// Removes a from γ. Throws PreconditionError unless eliminable(x, a).
ReducedPath eliminate_point(const PosetPtr& x, Point a, const StepPath& g,
                            EliminationPlan* plan = nullptr);

// Repeated elimination down to the subspace of extrema. The order picks the
// highest-ranked non-extremal point, ties by name.
ReducedPath project_to_extrema(const PosetPtr& x, const StepPath& g);

}  // namespace pursuit
