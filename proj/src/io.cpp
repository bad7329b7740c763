#include "poset_pursuit/io.hpp"

#include <fstream>
#include <sstream>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/errors.hpp"

namespace pursuit {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Time time_of(const Json& j) {
  if (j.is_number_integer()) return make_time(j.get<long>());
  if (j.is_string()) return parse_time(j.get<std::string>());
  fail("times must be strings like \"3/4\" or integers");
}

Point point_of(const FinitePoset& x, const Json& j) {
  std::string name = str(j, "point name");
  auto p = x.find(name);
  if (!p) fail("unknown point \"" + name + "\"");
  return *p;
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Const: return "const";
    case NodeKind::Instant: return "instant";
    case NodeKind::Concat: return "concat";
    case NodeKind::Omega: return "omega";
    case NodeKind::SelfSimilar: return "selfsimilar";
  }
  return "?";
}

Json node_json(const FinitePoset& x, const Node& n) {
  Json j;
  j["kind"] = kind_name(n.kind);
  switch (n.kind) {
    case NodeKind::Const:
      j["value"] = x.name(n.value);
      j["duration"] = to_string(n.duration);
      break;
    case NodeKind::Instant:
      j["value"] = x.name(n.value);
      break;
    case NodeKind::Concat:
      j["children"] = Json::array();
      for (auto& c : n.children) j["children"].push_back(node_json(x, *c));
      break;
    case NodeKind::Omega:
      j["side"] = n.side == Side::Left ? "left" : "right";
      j["limit"] = x.name(n.limit);
      j["duration"] = to_string(n.duration);
      j["cells"] = Json::array();
      for (auto& c : n.children) j["cells"].push_back(node_json(x, *c));
      break;
    case NodeKind::SelfSimilar:
      j["limit"] = x.name(n.limit);
      j["duration"] = to_string(n.duration);
      j["skeleton"] = Json::array();
      for (auto& item : n.skeleton) {
        if (item.is_slot())
          j["skeleton"].push_back({{"slot", to_string(item.slot)}});
        else
          j["skeleton"].push_back({{"node", node_json(x, *item.node)}});
      }
      break;
  }
  return j;
}

NodePtr node_from(const FinitePoset& x, const Json& j, int depth = 0) {
  if (depth > 200) fail("regular path nested too deeply");
  const std::string kind = str(field(j, "kind"), "kind");
  auto children = [&](const char* key) {
    std::vector<NodePtr> out;
    const Json& arr = field(j, key);
    if (!arr.is_array()) fail(std::string(key) + " must be an array");
    for (auto& c : arr) out.push_back(node_from(x, c, depth + 1));
    return out;
  };
  if (kind == "const") return rp::constant(point_of(x, field(j, "value")), time_of(field(j, "duration")));
  if (kind == "instant") return rp::instant(point_of(x, field(j, "value")));
  if (kind == "concat") return rp::concat(x, children("children"));
  if (kind == "omega") {
    std::string side = str(field(j, "side"), "side");
    if (side != "left" && side != "right") fail("side must be \"left\" or \"right\"");
    return rp::omega(x, children("cells"), point_of(x, field(j, "limit")), side == "left" ? Side::Left : Side::Right,
                     time_of(field(j, "duration")));
  }
  if (kind == "selfsimilar") {
    std::vector<SkeletonItem> items;
    const Json& arr = field(j, "skeleton");
    if (!arr.is_array()) fail("skeleton must be an array");
    for (auto& item : arr) {
      if (item.contains("slot"))
        items.push_back({nullptr, time_of(item.at("slot"))});
      else
        items.push_back({node_from(x, field(item, "node"), depth + 1), 0});
    }
    return rp::self_similar(x, items, point_of(x, field(j, "limit")), time_of(field(j, "duration")));
  }
  fail("unknown node kind \"" + kind + "\"");
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": malformed JSON";
    throw ParseError(msg.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Json to_json(const FinitePoset& x) {
  Json j;
  j["points"] = x.names();
  j["relations"] = Json::array();
  for (auto& [a, b] : x.relation_names()) j["relations"].push_back({a, b});
  return j;
}

PreorderInput preorder_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.empty() || s[0] != '@') fail("a space is an object or a catalog name like \"@S21\"");
    FinitePoset x = catalog(s.substr(1));
    return {x.names(), x.relation_names()};
  }
  PreorderInput in;
  const Json& pts = field(j, "points");
  if (!pts.is_array()) fail("points must be an array");
  for (auto& p : pts) in.points.push_back(str(p, "point name"));
  if (j.contains("relations")) {
    const Json& rel = j.at("relations");
    if (!rel.is_array()) fail("relations must be an array");
    for (auto& r : rel) {
      if (!r.is_array() || r.size() != 2) fail("each relation is a pair [x, y]");
      in.relations.emplace_back(str(r[0], "point name"), str(r[1], "point name"));
    }
  }
  return in;
}

FinitePoset poset_from_json(const Json& j) {
  auto parsed = from_relations(preorder_from_json(j));
  if (auto* r = std::get_if<NonT0Report>(&parsed))
    fail("relation is not antisymmetric: " + r->x + " and " + r->y + " are identified");
  return std::get<FinitePoset>(std::move(parsed));
}

PreorderInput load_preorder(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return preorder_from_json(Json(spec));
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '"')) return preorder_from_json(parse_json(spec));
  return preorder_from_json(read_json_file(spec));
}

PosetPtr load_space(const std::string& spec) {
  auto parsed = from_relations(load_preorder(spec));
  if (auto* r = std::get_if<NonT0Report>(&parsed))
    fail("relation is not antisymmetric: " + r->x + " and " + r->y + " are identified");
  return share(std::get<FinitePoset>(std::move(parsed)));
}

Json to_json(const StepPath& g) {
  const FinitePoset& x = g.space();
  Json j;
  j["domain"] = {to_string(g.start()), to_string(g.end())};
  j["breakpoints"] = Json::array();
  for (int i = 0; i <= g.intervals(); ++i)
    j["breakpoints"].push_back({{"t", to_string(g.time(i))}, {"w", x.name(g.breakpoint(i))}});
  j["intervals"] = Json::array();
  for (int i = 0; i < g.intervals(); ++i) j["intervals"].push_back(x.name(g.interval(i)));
  if (g.tail()) j["tail"] = x.name(*g.tail());
  return j;
}

StepPath step_path_from_json(const PosetPtr& x, const Json& j) {
  const Json& bps = field(j, "breakpoints");
  const Json& ivs = field(j, "intervals");
  if (!bps.is_array() || !ivs.is_array()) fail("breakpoints and intervals must be arrays");
  std::vector<Time> times;
  std::vector<Point> w, v;
  for (auto& b : bps) {
    times.push_back(time_of(field(b, "t")));
    w.push_back(point_of(*x, field(b, "w")));
  }
  for (auto& i : ivs) v.push_back(point_of(*x, i));
  if (j.contains("domain")) {
    const Json& d = j.at("domain");
    if (!d.is_array() || d.size() != 2 || times.empty() || time_of(d[0]) != times.front() ||
        time_of(d[1]) != times.back())
      fail("domain does not match the first and last breakpoints");
  }
  std::optional<Point> tail;
  if (j.contains("tail")) tail = point_of(*x, j.at("tail"));
  return StepPath(x, times, w, v, tail);
}

Json to_json(const RegularPath& g) {
  Json j;
  j["start"] = to_string(g.start());
  j["root"] = node_json(g.space(), *g.root());
  return j;
}

RegularPath regular_path_from_json(const PosetPtr& x, const Json& j) {
  Time start = j.contains("start") ? time_of(j.at("start")) : Time(0);
  return RegularPath(x, node_from(*x, field(j, "root")), start);
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.duration != b.duration || a.value != b.value || a.limit != b.limit)
    return false;
  if (a.kind == NodeKind::Omega && a.side != b.side) return false;
  if (a.children.size() != b.children.size() || a.skeleton.size() != b.skeleton.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_tree(*a.children[i], *b.children[i])) return false;
  for (std::size_t i = 0; i < a.skeleton.size(); ++i) {
    const auto &p = a.skeleton[i], &q = b.skeleton[i];
    if (p.is_slot() != q.is_slot()) return false;
    if (p.is_slot() ? p.slot != q.slot : !same_tree(*p.node, *q.node)) return false;
  }
  return true;
}

Json to_json(const CellPoset& s) {
  Json j;
  j["cells"] = Json::array();
  for (Point p = 0; p < s.poset.size(); ++p) j["cells"].push_back({{"name", s.poset.name(p)}, {"dim", s.dim[p]}});
  j["faces"] = Json::array();
  for (auto [lo, hi] : s.poset.covers()) j["faces"].push_back({s.poset.name(lo), s.poset.name(hi)});
  if (s.reconstructed) j["reconstructed"] = true;
  return j;
}

CellPoset gallery_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.empty() || s[0] != '@') fail("a gallery is an object or a name like \"@gallery-1\"");
    return gallery(s.substr(1));
  }
  std::vector<std::pair<std::string, int>> cells;
  for (auto& c : field(j, "cells")) {
    const Json& d = field(c, "dim");
    if (!d.is_number_integer()) fail("dim must be an integer");
    cells.emplace_back(str(field(c, "name"), "cell name"), d.get<int>());
  }
  std::vector<std::pair<std::string, std::string>> faces;
  if (j.contains("faces"))
    for (auto& f : j.at("faces")) {
      if (!f.is_array() || f.size() != 2) fail("each face entry is a pair [face, cell]");
      faces.emplace_back(str(f[0], "cell name"), str(f[1], "cell name"));
    }
  CellPoset s = CellPoset::from_faces(cells, faces);
  s.reconstructed = j.value("reconstructed", false);
  return s;
}

Json to_json(const Verdict& v) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  j["rule"] = v.rule;
  if (v.space) j["space"] = to_json(*v.space);
  Json cert;
  if (v.cop) {
    cert["type"] = "strategy";
    cert["kind"] = to_string(v.cop->kind);
    cert["path"] = to_json(v.cop->path);
    if (!v.cop->notes.empty()) cert["notes"] = v.cop->notes;
  } else if (v.robber) {
    cert["type"] = "responder";
    cert["kind"] = to_string(v.robber->kind());
    cert["description"] = v.robber->describe();
  } else if (v.non_t0) {
    cert["type"] = "non-T0";
    cert["identified"] = {v.non_t0->x, v.non_t0->y};
    cert["map"] = Json::array();
    for (auto& [a, b] : v.non_t0->map) cert["map"].push_back({a, b});
  } else {
    cert["type"] = "trace";
  }
  j["certificate"] = cert;
  j["trace"] = v.trace;
  return j;
}

}  // namespace pursuit
