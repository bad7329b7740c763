#include "poset_pursuit/render.hpp"

#include <sstream>

namespace pursuit {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string hasse_dot(const FinitePoset& x, PointSet highlight) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Point p = 0; p < x.size(); ++p) {
    out << "  " << quoted(x.name(p));
    if (highlight.contains(p)) out << " [style=filled, fillcolor=lightgrey]";
    out << ";\n";
  }
  for (auto [lo, hi] : x.covers()) out << "  " << quoted(x.name(lo)) << " -> " << quoted(x.name(hi)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string step_path_svg(const StepPath& g, int width) {
  const FinitePoset& x = g.space();
  const double margin = 60, row = 40;
  const int rows = x.height() + 1;
  const double height = 2 * margin + row * std::max(rows - 1, 1);
  Time span = g.end() - g.start();
  const bool tailed = g.tail().has_value();
  const double usable = width - 2 * margin - (tailed ? 40 : 0);
  auto xpos = [&](const Time& t) {
    if (span == 0) return margin;
    return margin + usable * Time((t - g.start()) / span).get_d();
  };
  auto ypos = [&](Point p) { return height - margin - row * x.rank(p); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "  <line x1=\"" << margin << "\" y1=\"" << height - margin / 2 << "\" x2=\"" << width - margin / 2
      << "\" y2=\"" << height - margin / 2 << "\" stroke=\"grey\"/>\n";
  for (int r = 0; r < rows; ++r) {
    std::string label;
    for (Point p = 0; p < x.size(); ++p)
      if (x.rank(p) == r) label += (label.empty() ? "" : " ") + x.name(p);
    out << "  <text x=\"4\" y=\"" << height - margin - row * r + 4 << "\">" << xml_escape(label) << "</text>\n";
  }
  for (int i = 0; i < g.intervals(); ++i) {
    Point v = g.interval(i);
    double x0 = xpos(g.time(i)), x1 = xpos(g.time(i + 1)), y = ypos(v);
    out << "  <line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x1 << "\" y2=\"" << y
        << "\" stroke=\"black\" stroke-width=\"3\"><title>" << xml_escape(x.name(v)) << "</title></line>\n";
  }
  for (int i = 0; i <= g.intervals(); ++i) {
    Point w = g.breakpoint(i);
    out << "  <circle cx=\"" << xpos(g.time(i)) << "\" cy=\"" << ypos(w) << "\" r=\"4\" fill=\"crimson\"><title>"
        << xml_escape(x.name(w)) << " at " << to_string(g.time(i)) << "</title></circle>\n";
    out << "  <text x=\"" << xpos(g.time(i)) - 4 << "\" y=\"" << height - margin / 2 + 14 << "\">"
        << to_string(g.time(i)) << "</text>\n";
  }
  if (tailed) {
    Point u = *g.tail();
    double x0 = xpos(g.end()), y = ypos(u);
    out << "  <line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x0 + 40 << "\" y2=\"" << y
        << "\" stroke=\"black\" stroke-width=\"3\" stroke-dasharray=\"4 3\"><title>" << xml_escape(x.name(u))
        << " onwards</title></line>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pursuit
