#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/maps.hpp"
#include "poset_pursuit/poset.hpp"

namespace pursuit {

// Structural obstructions and hypotheses used by the classifier and by the
// general synthesizer. Embeddings into the extrema subspace target
// `extrema_space`; the others target the space itself.
struct ConditionReport {
  PosetPtr space;
  PosetPtr extrema_space;
  std::vector<Point> extrema_to_parent;

  std::optional<std::vector<Point>> extrema_cycle;  // indices in extrema_space
  std::optional<Embedding> extrema_s21;
  std::optional<Embedding> extrema_s30op;
  std::optional<Embedding> yoke_extremal;     // yoke A with E(A) inside E(X)
  std::optional<Embedding> yoke_op_extremal;  // opposite yoke, same constraint
  std::optional<Embedding> yoke_unbounded;    // yoke whose a, b have no common upper bound

  // The obstructions that rule out a cop strategy.
  bool necessary_hold() const {
    return !extrema_cycle && !extrema_s21 && !extrema_s30op && !yoke_extremal;
  }
  // Hypotheses 1-4 of the general cop construction.
  bool sufficient_hold() const { return necessary_hold() && !yoke_op_extremal; }
  // Name of the first failed hypothesis (1-4), or 0.
  int first_failed() const;
  std::string describe() const;
};

ConditionReport check_conditions(const PosetPtr& x);

// Point names of an embedding's image, in source order.
std::vector<std::string> image_names(const Embedding& e);

}  // namespace pursuit
