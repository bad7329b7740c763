#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/regular_path.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

// True when some x' in U(x)\{v} and y' in U(y)\{v} share a component of X\{v}:
// a robber can move from x to y while the cop sits at v in between.
bool link(const FinitePoset& x, Point v, Point a, Point b);

// Precomputed link relation for a fixed space.
class LinkTable {
 public:
  explicit LinkTable(const FinitePoset& x);
  bool operator()(Point v, Point a, Point b) const { return (rows_[v * n_ + a] >> b) & 1u; }
  // Points y with link(v, a, y).
  PointSet row(Point v, Point a) const { return PointSet(rows_[v * n_ + a]); }

 private:
  int n_;
  std::vector<std::uint64_t> rows_;
};

// Robber values x_0..x_k at the cop's breakpoints.
struct EscapeWitness {
  std::vector<Point> assignment;
  std::optional<Point> tail;  // resting value when the cop path has a tail
};

std::optional<EscapeWitness> escape_exists(const FinitePoset& x, const StepPath& cop);

// Escape existence by enumerating robber step paths that add at most
// `extra` breakpoints inside each cop interval. Compact cop paths only.
class EnumeratedEscape {
 public:
  explicit EnumeratedEscape(const FinitePoset& x, int extra = 2);
  bool operator()(const StepPath& cop) const;

 private:
  // reach_[v][a]: robber values at the right end of a cop interval valued v
  // when the robber starts at a.
  std::vector<std::vector<PointSet>> reach_;
  FinitePoset x_;
};
bool escape_by_enumeration(const StepPath& cop, int extra = 2);

// Builds a coincidence-free robber path from a witness by inserting fences
// at equally spaced times inside each cop interval.
StepPath realize_escape(const StepPath& cop, const EscapeWitness& w);

struct StrongStrategyVerdict {
  bool strong = false;
  std::optional<StepPath> escape;  // present when not strong
};
StrongStrategyVerdict is_strong_strategy(const StepPath& cop);

// Search for robber step paths with at most `budget` interior breakpoints on
// a grid derived from the depth-k unrolling of a regular cop path. Every
// reported escape is checked against the exact regular path.
struct BoundedSearchReport {
  std::optional<StepPath> escape;
  int budget = 0, unroll = 0;
  std::size_t grid_size = 0;
  // Outcome of the same search one unrolling level deeper (only computed
  // when requested and nothing was found).
  std::optional<bool> deeper_found;
  std::string summary() const;
};

std::vector<Time> canonical_grid(const RegularPath& cop, int k);
BoundedSearchReport bounded_escape_search(const RegularPath& cop, int budget, int k,
                                          bool check_deeper = false);
// Same search on an explicit grid (must contain the domain ends).
std::optional<StepPath> grid_escape_search(const RegularPath& cop, std::vector<Time> grid, int budget);

}  // namespace pursuit
