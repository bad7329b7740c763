#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/maps.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

enum class ResponderKind { FPFMap, FourCover, S21, S30op, Yoke, Retract, Extrema, DP };

std::string to_string(ResponderKind k);

// Raised by the search-based responder when the cop path cannot be escaped.
class NoEscape : public Error {
 public:
  using Error::Error;
};

// An executable robber strategy: maps a cop step path to a step path on the
// same domain with no coincidence.
class Responder {
 public:
  virtual ~Responder() = default;
  virtual ResponderKind kind() const = 0;
  virtual std::string describe() const = 0;
  const PosetPtr& space() const { return space_; }

  // Throws DomainMismatch when the cop path lives in another space. When
  // post-hoc checking is on, a coincidence raises Error.
  StepPath respond(const StepPath& cop) const;

  static void set_posthoc_checks(bool on);
  static bool posthoc_checks();

 protected:
  explicit Responder(PosetPtr space) : space_(std::move(space)) {}
  virtual StepPath do_respond(const StepPath& cop) const = 0;

 private:
  PosetPtr space_;
};

using ResponderPtr = std::shared_ptr<const Responder>;

// Four open sets A0, A1, A2 (pairwise disjoint) and B covering the space,
// points a_i in A_i \ B and b in B, and fences omega_i from b to a_i that
// avoid A_j for j != i.
struct FourCoverSetup {
  PosetPtr space;
  std::array<PointSet, 3> a_sets;
  PointSet b_set;
  std::array<Point, 3> a_points{};
  Point b_point = -1;
  std::array<std::vector<Point>, 3> fences;

  // Empty when valid, otherwise the first violated requirement.
  std::string violation() const;
};

// A_i = U(i'), B = the rest of the hub, b = 0, fences 0, i, i'.
FourCoverSetup s30_four_cover_setup(const PosetPtr& s30);

ResponderPtr make_fpf_responder(MonotoneMap f);
ResponderPtr make_four_cover_responder(FourCoverSetup setup);
// kind is S21, S30op or Yoke; the space must equal the catalog space.
ResponderPtr make_catalog_responder(ResponderKind kind, PosetPtr space);
// to_inner: X -> inner space and from_inner: inner space -> X with
// to_inner after from_inner the identity.
ResponderPtr make_retract_responder(MonotoneMap to_inner, MonotoneMap from_inner, ResponderPtr inner);
// r is a retraction of X; the inner responder lives on the subspace r(X).
ResponderPtr make_retract_responder(const MonotoneMap& r, ResponderPtr inner);
// r is a retraction of X onto the image of e; the inner responder lives on
// e's source space.
ResponderPtr make_retract_responder(const MonotoneMap& r, const Embedding& e, ResponderPtr inner);
// The inner responder lives on the extrema subspace of x.
ResponderPtr make_extrema_responder(PosetPtr x, ResponderPtr inner);
ResponderPtr make_dp_responder(PosetPtr x);

// Direct forms.
StepPath respond_fpf(const MonotoneMap& f, const StepPath& cop);
std::optional<StepPath> respond_dp(const StepPath& cop);

}  // namespace pursuit
