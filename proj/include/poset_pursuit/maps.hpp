#pragma once

#include <optional>
#include <vector>

#include "poset_pursuit/poset.hpp"

namespace pursuit {

// An order-preserving map between finite spaces (= a continuous map).
struct MonotoneMap {
  PosetPtr domain, codomain;
  std::vector<Point> image;

  Point operator()(Point p) const { return image.at(p); }
  bool is_monotone() const;
  bool is_self_map() const { return domain && domain == codomain; }
  bool is_retraction() const;  // self-map with r∘r = r
  bool is_fixed_point_free() const;
  PointSet image_set() const;

  static MonotoneMap identity(PosetPtr x);
  // this ∘ g
  MonotoneMap after(const MonotoneMap& g) const;
};

// Order embedding: s <= s' iff map(s) <= map(s').
struct Embedding {
  PosetPtr source, target;
  std::vector<Point> map;

  bool is_valid() const;
  PointSet image() const;
  MonotoneMap as_map() const { return {source, target, map}; }
};

enum class Extremality { Maximal, Minimal };

struct EmbeddingConstraints {
  std::vector<std::pair<Point, Extremality>> pinned;          // source point, required kind in target
  std::vector<std::pair<Point, Point>> no_common_upper_bound;  // source pairs
};

// Exhaustive backtracking search for an induced embedding.
std::optional<Embedding> find_order_embedding(PosetPtr t, PosetPtr x,
                                              const EmbeddingConstraints& c = {});

std::optional<Embedding> is_isomorphic(PosetPtr x, PosetPtr y);

// Minimal-length cycle x0 < x1 > x2 < ... > x0 of a height-1 space, listed
// x0..x_{n-1} with x0 minimal. Throws PreconditionError if height > 1.
std::optional<std::vector<Point>> has_cycle_height1(const FinitePoset& x);

// r(x) = x_i with i = min(n-1, distance to x0 avoiding the edge x0 - x_{n-1}).
MonotoneMap cycle_retraction(PosetPtr x, const std::vector<Point>& cycle);

// Sends every point to the nearest point of `a` in the Hasse graph.
MonotoneMap closest_point_retraction(PosetPtr x, PointSet a);

// Retraction onto an embedded yoke {d < c < a, c < b}. The embedding's source
// must be the catalog yoke.
MonotoneMap yoke_retraction(PosetPtr x, const Embedding& e);

struct FpfSearch {
  bool attempted = false;
  std::optional<MonotoneMap> map;
};
FpfSearch find_fixed_point_free_map(PosetPtr x, int cap = 8);

// Rotation by two positions along a cycle, extended through a retraction.
MonotoneMap cycle_rotation(PosetPtr x, const std::vector<Point>& cycle);

}  // namespace pursuit
