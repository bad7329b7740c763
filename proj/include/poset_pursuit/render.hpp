#pragma once

#include <string>

#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/step_path.hpp"

namespace pursuit {

// Graphviz source for the Hasse diagram, drawn bottom to top so every edge
// points from a point to one of its upper covers. Points in `highlight`
// are filled.
std::string hasse_dot(const FinitePoset& x, PointSet highlight = {});

// A standalone SVG timeline: time runs left to right, each point sits on a
// row given by its rank. Interval values are horizontal bars, breakpoint
// values are dots.
std::string step_path_svg(const StepPath& g, int width = 640);

}  // namespace pursuit
