#pragma once

#include <string>
#include <vector>

#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/regular_path.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

enum class StrategyKind { Max, Fence, Height1, Main2, Fractal, Singleton, Glued };

std::string to_string(StrategyKind k);

struct StrategyCertificate {
  StrategyKind kind;
  RegularPath path;
  std::string notes;
};

// Loop at the maximum that meets every path, and every path germ at 0.
// Throws PreconditionError when X has no maximum.
RegularPath max_strategy(const PosetPtr& x);
// The same construction for the subspace `s` (which must have a maximum),
// as a node of duration 1 with values in x.
NodePtr max_strategy_node(const FinitePoset& x, PointSet s);

// Monotone traversal of a space whose Hasse diagram is a simple path.
StepPath fence_strategy(const PosetPtr& x);

// Connected height-1 spaces without cycles, S21 or S30op subspaces. Throws
// ConditionFailed naming the violated condition.
RegularPath height1_strategy(const PosetPtr& x);

// Spaces meeting the four sufficient conditions. Throws ConditionFailed
// with condition "1".."4" (or "connected").
RegularPath main2_strategy(const PosetPtr& x);

// The self-similar strategy on the six-point space, on [-1, 2].
RegularPath fractal_strategy();
RegularPath fractal_strategy(const PosetPtr& fractal6);
// The self-similar part alone, on [0, 1].
NodePtr fractal_sigma(const FinitePoset& fractal6);

// Longest fence (simple path in the comparability graph restricted to
// `within`), lexicographically least among the longest.
std::vector<Point> longest_fence(const FinitePoset& x, PointSet within);

struct GlueData {
  PosetPtr z;
  PointSet x_part, y_part;
  Point z0 = -1;
  StrategyKind y_kind = StrategyKind::Max;  // certificate kind of the second path
};

struct GlueCheck {
  bool ok = false;
  bool used_open_hypothesis = false;
  std::string failure;
};

GlueCheck check_glue(const RegularPath& gx, const RegularPath& gy, const GlueData& d);
// gx followed by gy. Both paths live in d.z. Throws ConditionFailed when a
// hypothesis cannot be verified.
RegularPath glue(const RegularPath& gx, const RegularPath& gy, const GlueData& d);

}  // namespace pursuit
