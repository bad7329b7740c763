#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "poset_pursuit/complexes.hpp"
#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/regular_path.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

using Json = nlohmann::ordered_json;

// Parses JSON text; syntax errors raise ParseError with line and column.
Json parse_json(std::string_view text, std::string_view source = "input");
Json read_json_file(const std::string& path);

// {"points": [...], "relations": [[x, y], ...]} with x <= y.
Json to_json(const FinitePoset& x);
PreorderInput preorder_from_json(const Json& j);
// Accepts the object form or a string "@Name" naming a catalog space.
// Non-antisymmetric input raises ParseError.
FinitePoset poset_from_json(const Json& j);
// "@Name", a path to a JSON file, or inline JSON text.
PreorderInput load_preorder(const std::string& spec);
PosetPtr load_space(const std::string& spec);

// {"domain": [t0, tk], "breakpoints": [{"t", "w"}...], "intervals": [...],
//  "tail": v (optional)}; times are decimal fractions like "3/4".
Json to_json(const StepPath& g);
StepPath step_path_from_json(const PosetPtr& x, const Json& j);

// {"start": t, "root": node}; nodes have "kind" const | instant | concat |
// omega | selfsimilar.
Json to_json(const RegularPath& g);
RegularPath regular_path_from_json(const PosetPtr& x, const Json& j);
// Structural equality of expression trees.
bool same_tree(const Node& a, const Node& b);

// {"cells": [{"name", "dim"}...], "faces": [[face, cell], ...]}
Json to_json(const CellPoset& s);
CellPoset gallery_from_json(const Json& j);

// {"outcome", "rule", "certificate", "trace"}.
Json to_json(const Verdict& v);

}  // namespace pursuit
