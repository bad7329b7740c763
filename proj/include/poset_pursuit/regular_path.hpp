#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/maps.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/rational.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

enum class NodeKind { Const, Instant, Concat, Omega, SelfSimilar };
enum class Side { Left, Right };

// Behaviour of a node at one of its ends. `approach` holds the values taken
// arbitrarily close to the end (excluding the end itself).
struct Boundary {
  bool closed = false;
  Point value = -1;
  PointSet approach;
};

// Values in a time window: held on an open sub-interval, at isolated
// instants, or at infinitely many instants.
struct Profile {
  PointSet positive, instants, dense;
  PointSet all() const { return positive | instants | dense; }
  void merge(const Profile& o) {
    positive |= o.positive;
    instants |= o.instants;
    dense |= o.dense;
  }
  bool operator==(const Profile&) const = default;
};

class Node;
using NodePtr = std::shared_ptr<const Node>;

// One entry of a self-similar skeleton: either a fixed sub-path or a slot
// holding a scaled copy of the whole node.
struct SkeletonItem {
  NodePtr node;  // null for a slot
  Time slot;     // slot length (normalized), used when node is null
  bool is_slot() const { return !node; }
};

class Node {
 public:
  NodeKind kind;
  Time duration;
  Point value = -1;                   // Const, Instant
  std::vector<NodePtr> children;      // Concat children, Omega cells
  Point limit = -1;                   // Omega, SelfSimilar
  Side side = Side::Left;             // Omega accumulation side
  std::vector<SkeletonItem> skeleton;  // SelfSimilar, lengths sum to 1

  Boundary left, right;
  PointSet values;   // every value taken anywhere in the node
  Profile full;      // profile over a window strictly containing the node
  int omega_depth = 0;
};

// Node factories. All validate local continuity and throw
// ContinuityViolation / PreconditionError.
namespace rp {
NodePtr constant(Point v, const Time& duration);
NodePtr instant(Point v);
NodePtr concat(const FinitePoset& x, std::vector<NodePtr> children);
NodePtr omega(const FinitePoset& x, std::vector<NodePtr> cells, Point limit, Side side,
              const Time& duration);
NodePtr self_similar(const FinitePoset& x, std::vector<SkeletonItem> skeleton, Point limit,
                     const Time& duration);
NodePtr reversed(const FinitePoset& x, const NodePtr& n);
NodePtr mapped(const MonotoneMap& f, const NodePtr& n);
NodePtr scaled(const FinitePoset& x, const NodePtr& n, const Time& factor);
}  // namespace rp

struct CoincidenceLocator {
  Time from, to;  // from == to for a coincidence at an instant
};

class RegularPath {
 public:
  // The root must be closed at both ends.
  RegularPath(PosetPtr space, NodePtr root, const Time& start = 0);
  static RegularPath from_step_path(const StepPath& g);

  const FinitePoset& space() const { return *space_; }
  const PosetPtr& space_ptr() const { return space_; }
  const NodePtr& root() const { return root_; }
  const Time& start() const { return start_; }
  Time end() const { return start_ + root_->duration; }
  const Time& duration() const { return root_->duration; }

  Point value_at(const Time& t) const;
  // Classification of the values on the open window (l, r).
  Profile value_profile(const Time& l, const Time& r) const;
  PointSet values_in(const Time& l, const Time& r) const { return value_profile(l, r).all(); }

  RegularPath shifted(const Time& new_start) const { return RegularPath(space_, root_, new_start); }
  RegularPath rescaled(const Time& new_start, const Time& new_end) const;

 private:
  PosetPtr space_;
  NodePtr root_;
  Time start_;
};

RegularPath reverse(const RegularPath& g);
RegularPath map_path(const MonotoneMap& f, const RegularPath& g);
// Concatenation; the end of a must equal the start of b after shifting b.
RegularPath concat(const RegularPath& a, const RegularPath& b);

std::optional<CoincidenceLocator> coincidence_regular_step(const RegularPath& g, const StepPath& r);

struct Unrolled {
  StepPath path;
  // Open windows where the unrolled path replaces limit behaviour by fillers.
  std::vector<std::pair<Time, Time>> replaced;
  // Extra probe times inside replaced self-similar slots.
  std::vector<Time> probes;
};

Unrolled unroll_detailed(const RegularPath& g, int k);
inline StepPath unroll(const RegularPath& g, int k) { return unroll_detailed(g, k).path; }

std::string describe(const FinitePoset& x, const NodePtr& n);

}  // namespace pursuit
