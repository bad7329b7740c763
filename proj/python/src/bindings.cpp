#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/cli.hpp"
#include "poset_pursuit/complexes.hpp"
#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/io.hpp"
#include "poset_pursuit/render.hpp"
#include "poset_pursuit/responders.hpp"
#include "poset_pursuit/verifier.hpp"

namespace py = pybind11;
using namespace pursuit;

namespace {

// Python-facing handle; JSON crosses the boundary as text.
struct Space {
  PosetPtr ptr;
};

Space make_space(const std::vector<std::string>& points,
                 const std::vector<std::pair<std::string, std::string>>& relations) {
  return {share(FinitePoset(points, relations))};
}

std::string classify_json(const std::string& spec, int fpf_cap) {
  return to_json(classify(load_preorder(spec), {.fpf_cap = fpf_cap})).dump();
}

std::optional<std::string> respond_json(const Space& s, const std::string& cop, const std::string& strategy) {
  StepPath g = step_path_from_json(s.ptr, parse_json(cop));
  std::optional<StepPath> escape;
  if (strategy == "dp") {
    escape = respond_dp(g);
  } else if (strategy == "auto") {
    Verdict v = classify(s.ptr);
    escape = v.robber && !g.tail() ? std::optional(v.robber->respond(g)) : respond_dp(g);
  } else {
    throw ParseError("strategy must be \"auto\" or \"dp\"");
  }
  if (!escape) return std::nullopt;
  return to_json(*escape).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cops and robbers on finite topological spaces";

  // pybind11 tries translators newest first, so the base class goes first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<Space>(m, "Space")
      .def(py::init(&make_space), py::arg("points"), py::arg("relations") = std::vector<std::pair<std::string, std::string>>{})
      .def_static("catalog", [](const std::string& name) { return Space{share(catalog(name))}; })
      .def_static("load", [](const std::string& spec) { return Space{load_space(spec)}; },
                  "From \"@Name\", a JSON file path, or inline JSON")
      .def_property_readonly("points", [](const Space& s) { return s.ptr->names(); })
      .def_property_readonly("height", [](const Space& s) { return s.ptr->height(); })
      .def("__len__", [](const Space& s) { return s.ptr->size(); })
      .def("leq", [](const Space& s, const std::string& a, const std::string& b) {
        return s.ptr->leq(s.ptr->at(a), s.ptr->at(b));
      })
      .def("covers", [](const Space& s) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto [lo, hi] : s.ptr->covers()) out.emplace_back(s.ptr->name(lo), s.ptr->name(hi));
        return out;
      })
      .def("opposite", [](const Space& s) { return Space{share(opposite(*s.ptr))}; })
      .def("to_json", [](const Space& s) { return to_json(*s.ptr).dump(); })
      .def("hasse_dot", [](const Space& s) { return hasse_dot(*s.ptr); })
      .def("__eq__", [](const Space& a, const Space& b) { return *a.ptr == *b.ptr; })
      .def("__repr__", [](const Space& s) { return "Space(" + s.ptr->describe() + ")"; });

  m.def("enumerate_posets", [](int n) {
    std::vector<Space> out;
    for (auto& x : enumerate_posets(n)) out.push_back({share(std::move(x))});
    return out;
  }, py::arg("n"));
  m.def("catalog_names", &catalog_sample_names);
  m.def("is_isomorphic", [](const Space& a, const Space& b) { return canonical_code(*a.ptr) == canonical_code(*b.ptr); });

  m.def("_classify", &classify_json, py::arg("space"), py::arg("fpf_cap") = ClassifyOptions{}.fpf_cap);
  m.def("_classify_space", [](const Space& s, int fpf_cap) {
    return to_json(classify(s.ptr, {.fpf_cap = fpf_cap})).dump();
  }, py::arg("space"), py::arg("fpf_cap") = ClassifyOptions{}.fpf_cap);
  m.def("_synthesize", [](const Space& s) -> std::optional<std::string> {
    Verdict v = classify(s.ptr);
    if (!v.cop) return std::nullopt;
    return to_json(v.cop->path).dump();
  });
  m.def("_escape", [](const Space& s, const std::string& cop) -> std::optional<std::vector<std::string>> {
    auto w = escape_exists(*s.ptr, step_path_from_json(s.ptr, parse_json(cop)));
    if (!w) return std::nullopt;
    std::vector<std::string> names;
    for (Point p : w->assignment) names.push_back(s.ptr->name(p));
    return names;
  });
  m.def("_respond", &respond_json, py::arg("space"), py::arg("cop"), py::arg("strategy") = "auto");
  m.def("_is_strong", [](const Space& s, const std::string& cop) {
    return is_strong_strategy(step_path_from_json(s.ptr, parse_json(cop))).strong;
  });
  m.def("_bounded_search", [](const Space& s, const std::string& cop, int budget, int unroll) {
    auto rep = bounded_escape_search(regular_path_from_json(s.ptr, parse_json(cop)), budget, unroll);
    return py::make_tuple(rep.escape.has_value(), rep.summary());
  });
  m.def("_svg", [](const Space& s, const std::string& path) {
    return step_path_svg(step_path_from_json(s.ptr, parse_json(path)));
  });
  m.def("_gallery", [](const std::string& name) {
    auto w = watcher_decide(gallery(name));
    return py::make_tuple(w.winner(), w.verdict.rule, w.report);
  });
  m.def("gallery_names", &gallery_names);
  m.def("_cross_validate", [](int n) {
    auto rep = cross_validate(n);
    py::dict d;
    d["posets"] = rep.posets;
    d["cop_wins"] = rep.cop_wins;
    d["robber_wins"] = rep.robber_wins;
    d["unknown"] = rep.unknown;
    d["contradictions"] = rep.contradictions;
    d["certificate_failures"] = rep.certificate_failures;
    d["dp_discrepancies"] = rep.dp_discrepancies;
    d["clean"] = rep.clean();
    return d;
  });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
