#include "poset_pursuit/conditions.hpp"

#include <sstream>

#include "poset_pursuit/catalog.hpp"

namespace pursuit {

namespace {

PosetPtr cached(const char* name) {
  // Catalog spaces are immutable, so sharing one instance is safe.
  static const PosetPtr s21 = share(catalog("S21"));
  static const PosetPtr s30op = share(catalog("S30op"));
  static const PosetPtr yoke = share(catalog("Yoke"));
  static const PosetPtr yoke_op = share(catalog("Yokeop"));
  std::string n(name);
  if (n == "S21") return s21;
  if (n == "S30op") return s30op;
  if (n == "Yoke") return yoke;
  return yoke_op;
}

}  // namespace

std::vector<std::string> image_names(const Embedding& e) {
  std::vector<std::string> out;
  for (Point p : e.map) out.push_back(e.target->name(p));
  return out;
}

int ConditionReport::first_failed() const {
  if (extrema_cycle) return 1;
  if (extrema_s21 || extrema_s30op) return 2;
  if (yoke_extremal) return 3;
  if (yoke_op_extremal) return 4;
  return 0;
}

std::string ConditionReport::describe() const {
  std::ostringstream os;
  auto line = [&](const char* label, const std::optional<Embedding>& e) {
    os << label << ": ";
    if (!e) {
      os << "pass\n";
      return;
    }
    os << "fail {";
    auto names = image_names(*e);
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "}\n";
  };
  os << "1 extrema without cycles: ";
  if (extrema_cycle) {
    os << "fail {";
    for (std::size_t i = 0; i < extrema_cycle->size(); ++i)
      os << (i ? "," : "") << extrema_space->name((*extrema_cycle)[i]);
    os << "}\n";
  } else {
    os << "pass\n";
  }
  line("2a no S21 in extrema", extrema_s21);
  line("2b no S30op in extrema", extrema_s30op);
  line("3 no yoke with extremal ends", yoke_extremal);
  line("4 no opposite yoke with extremal ends", yoke_op_extremal);
  line("yoke with unbounded top pair", yoke_unbounded);
  return os.str();
}

ConditionReport check_conditions(const PosetPtr& xp) {
  ConditionReport r;
  r.space = xp;
  Subspace e = extrema(*xp);
  r.extrema_space = share(e.space);
  r.extrema_to_parent = e.to_parent;
  r.extrema_cycle = has_cycle_height1(*r.extrema_space);
  r.extrema_s21 = find_order_embedding(cached("S21"), r.extrema_space);
  r.extrema_s30op = find_order_embedding(cached("S30op"), r.extrema_space);

  const PosetPtr y = cached("Yoke"), yo = cached("Yokeop");
  EmbeddingConstraints top{{{y->at("a"), Extremality::Maximal},
                            {y->at("b"), Extremality::Maximal},
                            {y->at("d"), Extremality::Minimal}},
                           {}};
  r.yoke_extremal = find_order_embedding(y, xp, top);
  EmbeddingConstraints bottom{{{yo->at("a"), Extremality::Minimal},
                               {yo->at("b"), Extremality::Minimal},
                               {yo->at("d"), Extremality::Maximal}},
                              {}};
  r.yoke_op_extremal = find_order_embedding(yo, xp, bottom);
  EmbeddingConstraints unbounded{{}, {{y->at("a"), y->at("b")}}};
  r.yoke_unbounded = find_order_embedding(y, xp, unbounded);
  return r;
}

}  // namespace pursuit
