#include "poset_pursuit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/complexes.hpp"
#include "poset_pursuit/decision.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/io.hpp"
#include "poset_pursuit/render.hpp"
#include "poset_pursuit/responders.hpp"
#include "poset_pursuit/verifier.hpp"

namespace pursuit {

void RunConfig::validate() const {
  if (budget <= 0) throw PreconditionError("--budget must be positive");
  if (unroll <= 0) throw PreconditionError("--unroll must be positive");
  if (cap <= 0) throw PreconditionError("--cap must be positive");
}

namespace {

constexpr int status(ExitStatus s) { return static_cast<int>(s); }

int env_cap(int fallback) {
  const char* v = std::getenv("POSET_PURSUIT_CAP");
  if (!v || !*v) return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("POSET_PURSUIT_CAP is not an integer: ") + v);
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

Json load_json(const std::string& spec) {
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) return parse_json(spec);
  return read_json_file(spec);
}

bool is_regular(const Json& j) { return j.is_object() && j.contains("root"); }

ResponderKind responder_kind(const std::string& name) {
  for (auto k : {ResponderKind::S21, ResponderKind::S30op, ResponderKind::Yoke})
    if (to_string(k) == name) return k;
  throw ParseError("unknown catalog responder \"" + name + "\" (expected S21, S30op or Yoke)");
}

std::string relations_text(const FinitePoset& x) {
  std::string s;
  for (auto [lo, hi] : x.covers()) s += (s.empty() ? "" : " ") + x.name(lo) + "<" + x.name(hi);
  return s.empty() ? "(discrete)" : s;
}

struct Cli {
  Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  // Subcommand-specific values.
  std::string space, cop, certificate, strategy = "auto", path, output;
  int n = 0;
  int fpf_cap = ClassifyOptions{}.fpf_cap;
  bool with_classify = false, dot = false, svg = false;

  void emit(const std::string& text) {
    if (output.empty())
      out << text;
    else
      write_file(output, text);
  }

  int classify_cmd() {
    Verdict v = classify(load_preorder(space), {.fpf_cap = fpf_cap});
    Json j = to_json(v);
    if (!certificate.empty()) write_file(certificate, j["certificate"].dump(2) + "\n");
    out << j.dump(2) << "\n";
    return v.outcome == Outcome::Unknown ? status(ExitStatus::Inconclusive) : status(ExitStatus::Decided);
  }

  int synthesize_cmd(bool unroll_given) {
    auto x = load_space(space);
    Verdict v = classify(x, {.fpf_cap = fpf_cap});
    if (!v.cop) {
      err << "no cop strategy: " << v.summary() << "\n";
      return v.outcome == Outcome::Unknown ? status(ExitStatus::Inconclusive) : status(ExitStatus::Decided);
    }
    Json j;
    j["kind"] = to_string(v.cop->kind);
    j["rule"] = v.rule;
    j["path"] = to_json(v.cop->path);
    if (unroll_given) j["unrolled"] = to_json(unroll(v.cop->path, cfg.unroll));
    out << j.dump(2) << "\n";
    return status(ExitStatus::Decided);
  }

  int respond_cmd() {
    auto x = load_space(space);
    StepPath g = step_path_from_json(x, load_json(cop));
    std::optional<StepPath> escape;
    if (strategy == "dp") {
      escape = respond_dp(g);
    } else if (strategy.rfind("catalog:", 0) == 0) {
      escape = make_catalog_responder(responder_kind(strategy.substr(8)), x)->respond(g);
    } else if (strategy == "auto") {
      Verdict v = classify(x, {.fpf_cap = fpf_cap});
      if (v.robber && !g.tail())
        escape = v.robber->respond(g);
      else
        escape = respond_dp(g);
    } else {
      throw ParseError("--strategy must be auto, dp or catalog:<kind>");
    }
    if (escape)
      out << to_json(*escape).dump(2) << "\n";
    else
      out << "NO-ESCAPE\n";
    return status(ExitStatus::Decided);
  }

  int verify_cmd() {
    auto x = load_space(space);
    Json j = load_json(cop);
    Json r;
    if (!is_regular(j)) {
      auto verdict = is_strong_strategy(step_path_from_json(x, j));
      r["mode"] = "exact";
      r["strong"] = verdict.strong;
      if (verdict.escape) r["escape"] = to_json(*verdict.escape);
      out << r.dump(2) << "\n";
      return status(ExitStatus::Decided);
    }
    auto report = bounded_escape_search(regular_path_from_json(x, j), cfg.budget, cfg.unroll);
    r["mode"] = "bounded";
    r["budget"] = report.budget;
    r["unroll"] = report.unroll;
    r["grid"] = report.grid_size;
    r["result"] = report.escape ? "escape" : "none-found";
    if (report.escape) r["escape"] = to_json(*report.escape);
    r["summary"] = report.summary();
    out << r.dump(2) << "\n";
    return report.escape ? status(ExitStatus::Decided) : status(ExitStatus::Inconclusive);
  }

  int gallery_cmd() {
    std::vector<CellPoset> list;
    if (space.empty()) {
      for (auto& name : gallery_names()) list.push_back(gallery(name));
    } else if (space[0] == '@') {
      list.push_back(gallery(space.substr(1)));
    } else {
      list.push_back(gallery_from_json(load_json(space)));
    }
    std::vector<std::string> names = space.empty() ? gallery_names() : std::vector<std::string>{space};
    Json arr = Json::array();
    bool unknown = false;
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto w = watcher_decide(list[i]);
      unknown |= w.verdict.outcome == Outcome::Unknown;
      Json j;
      j["gallery"] = names[i];
      j["rooms"] = list[i].room_counts();
      j["winner"] = w.winner();
      j["rule"] = w.verdict.rule;
      if (list[i].reconstructed) j["reconstructed"] = true;
      j["report"] = w.report;
      arr.push_back(j);
    }
    out << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    return unknown ? status(ExitStatus::Inconclusive) : status(ExitStatus::Decided);
  }

  int enumerate_cmd() {
    auto posets = enumerate_posets(n, cfg.cap);
    bool unknown = false;
    if (cfg.format == "json") {
      Json arr = Json::array();
      for (auto& x : posets) {
        Json j = to_json(x);
        if (with_classify) {
          Verdict v = classify(share(x), {.fpf_cap = fpf_cap});
          unknown |= v.outcome == Outcome::Unknown;
          j["outcome"] = to_string(v.outcome);
          j["rule"] = v.rule;
        }
        arr.push_back(j);
      }
      out << arr.dump(2) << "\n";
    } else {
      out << posets.size() << " posets on " << n << " points\n";
      int i = 0;
      for (auto& x : posets) {
        out << std::setw(4) << i++ << "  ";
        if (with_classify) {
          Verdict v = classify(share(x), {.fpf_cap = fpf_cap});
          unknown |= v.outcome == Outcome::Unknown;
          out << std::left << std::setw(11) << to_string(v.outcome) << std::setw(18) << v.rule << std::right;
        }
        out << relations_text(x) << "\n";
      }
    }
    return with_classify && unknown ? status(ExitStatus::Inconclusive) : status(ExitStatus::Decided);
  }

  int render_cmd() {
    if (dot == svg) throw ParseError("render needs exactly one of --dot or --svg");
    auto x = load_space(space);
    if (dot) {
      emit(hasse_dot(*x));
      return status(ExitStatus::Decided);
    }
    if (path.empty()) throw ParseError("--svg needs --path with a step or regular path");
    Json j = load_json(path);
    StepPath g = is_regular(j) ? unroll(regular_path_from_json(x, j), cfg.unroll) : step_path_from_json(x, j);
    emit(step_path_svg(g));
    return status(ExitStatus::Decided);
  }

  int cross_validate_cmd() {
    if (n > cfg.cap) throw PreconditionError("n exceeds the enumeration cap");
    CrossValidationOptions opts;
    opts.validation.budget = cfg.budget;
    opts.validation.unroll = cfg.unroll;
    opts.validation.seed = cfg.seed;
    opts.classify.fpf_cap = fpf_cap;
    auto rep = cross_validate(n, opts);
    out << rep.summary() << "\n";
    for (auto& c : rep.counterexamples) out << "  " << c << "\n";
    return rep.clean() ? status(ExitStatus::Decided) : status(ExitStatus::Error);
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli c(out, err);
  CLI::App app{"Cops and robbers on finite topological spaces", "poset-pursuit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", c.cfg.seed, "Seed for sampled checks");
  app.add_option("--budget", c.cfg.budget, "Robber breakpoint budget for bounded search");
  app.add_option("--unroll", c.cfg.unroll, "Unrolling depth for regular paths");
  auto* cap_opt = app.add_option("--cap", c.cfg.cap, "Largest enumeration size (env POSET_PURSUIT_CAP)");
  app.add_option("--fpf-cap", c.fpf_cap, "Largest space given to the fixed-point-free search");

  auto* classify_cmd = app.add_subcommand("classify", "Decide who wins on a space");
  classify_cmd->add_option("space,--space", c.space, "@Name, JSON file or inline JSON");
  classify_cmd->add_option("--certificate", c.certificate, "Write the certificate JSON here");

  auto* synth = app.add_subcommand("synthesize", "Emit a cop strategy");
  synth->add_option("space,--space", c.space, "@Name, JSON file or inline JSON");
  auto* synth_unroll = synth->add_option("--unroll", c.cfg.unroll, "Also emit the depth-k unrolling");

  auto* respond = app.add_subcommand("respond", "Robber reply to a cop step path");
  respond->add_option("--space", c.space)->required();
  respond->add_option("--cop", c.cop, "Cop step path JSON")->required();
  respond->add_option("--strategy", c.strategy, "auto | dp | catalog:<kind>");

  auto* verify = app.add_subcommand("verify", "Check whether a cop path is a strategy");
  verify->add_option("--space", c.space)->required();
  verify->add_option("--cop", c.cop, "Step or regular path JSON")->required();
  verify->add_option("--budget", c.cfg.budget);
  verify->add_option("--unroll", c.cfg.unroll);

  auto* gallery_cmd = app.add_subcommand("gallery", "Watcher and thief on a gallery");
  gallery_cmd->add_option("gallery", c.space, "@name or JSON; all built-in galleries when omitted");

  auto* enumerate = app.add_subcommand("enumerate", "List posets up to isomorphism");
  enumerate->add_option("n", c.n)->required()->check(CLI::NonNegativeNumber);
  enumerate->add_flag("--classify", c.with_classify, "Classify each poset");
  enumerate->add_option("--format", c.cfg.format, "table or json")->check(CLI::IsMember({"json", "table"}));

  auto* render = app.add_subcommand("render", "DOT Hasse diagram or SVG timeline");
  render->add_option("space", c.space)->required();
  render->add_flag("--dot", c.dot);
  render->add_flag("--svg", c.svg);
  render->add_option("--path", c.path, "Path JSON for --svg");
  render->add_option("-o,--output", c.output);

  auto* cv = app.add_subcommand("cross-validate", "Consistency harness over all n-point posets");
  cv->add_option("n", c.n)->required()->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : status(ExitStatus::Error);
  }

  try {
    if (cap_opt->count() == 0) c.cfg.cap = env_cap(c.cfg.cap);
    c.cfg.command = app.get_subcommands().front()->get_name();
    if (c.dot) c.cfg.format = "dot";
    if (c.svg) c.cfg.format = "svg";
    c.cfg.validate();
    if (c.space.empty() && c.cfg.command != "gallery" && c.cfg.command != "enumerate" &&
        c.cfg.command != "cross-validate")
      throw ParseError("missing space");
    if (*classify_cmd) return c.classify_cmd();
    if (*synth) return c.synthesize_cmd(synth_unroll->count() > 0);
    if (*respond) return c.respond_cmd();
    if (*verify) return c.verify_cmd();
    if (*gallery_cmd) return c.gallery_cmd();
    if (*enumerate) return c.enumerate_cmd();
    if (*render) return c.render_cmd();
    if (*cv) return c.cross_validate_cmd();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return status(ExitStatus::Error);
  }
  return status(ExitStatus::Error);
}

}  // namespace pursuit
