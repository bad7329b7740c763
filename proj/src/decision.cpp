#include "poset_pursuit/decision.hpp"

#include <random>
#include <sstream>

#include "poset_pursuit/catalog.hpp"
#include "poset_pursuit/errors.hpp"
#include "poset_pursuit/maps.hpp"
#include "poset_pursuit/verifier.hpp"

namespace pursuit {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::CopWins: return "CopWins";
    case Outcome::RobberWins: return "RobberWins";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

std::string Verdict::summary() const {
  std::ostringstream out;
  out << to_string(outcome) << " by rule " << rule;
  if (cop) out << " (" << to_string(cop->kind) << " strategy)";
  if (robber) out << " (" << robber->describe() << ")";
  if (non_t0) out << " (points " << non_t0->x << " and " << non_t0->y << " are not separated)";
  return out.str();
}

namespace {

PosetPtr catalog_ptr(const char* name) { return share(catalog(name)); }

// Sends each component to a point of the next one.
MonotoneMap component_shift(const PosetPtr& x) {
  auto comps = components(*x);
  MonotoneMap f{x, x, std::vector<Point>(x->size())};
  for (std::size_t i = 0; i < comps.size(); ++i) {
    Point target = *comps[(i + 1) % comps.size()].first();
    for (Point p : comps[i]) f.image[p] = target;
  }
  return f;
}

// Robber certificate for a failed obstruction check, living on the extrema
// subspace (or on x itself for the yoke).
ResponderPtr obstruction_responder(const PosetPtr& x, const ConditionReport& c, std::string& rule) {
  const PosetPtr& e = c.extrema_space;
  if (c.extrema_cycle) {
    rule = "extrema-cycle";
    return make_fpf_responder(cycle_rotation(e, *c.extrema_cycle));
  }
  for (auto [emb, kind, name] : {std::tuple{&c.extrema_s21, ResponderKind::S21, "extrema-S21"},
                                 std::tuple{&c.extrema_s30op, ResponderKind::S30op, "extrema-S30op"}}) {
    if (!*emb) continue;
    rule = name;
    const Embedding& m = **emb;
    return make_retract_responder(closest_point_retraction(e, m.image()), m,
                                  make_catalog_responder(kind, m.source));
  }
  const auto& y = c.yoke_extremal ? c.yoke_extremal : c.yoke_unbounded;
  if (y) {
    rule = c.yoke_extremal ? "extremal-yoke" : "unbounded-yoke";
    return make_retract_responder(yoke_retraction(x, *y), *y,
                                  make_catalog_responder(ResponderKind::Yoke, y->source));
  }
  return nullptr;
}

Verdict cop_verdict(Verdict v, std::string rule, StrategyKind kind, RegularPath path, std::string notes = {}) {
  v.outcome = Outcome::CopWins;
  v.rule = std::move(rule);
  v.cop = StrategyCertificate{kind, std::move(path), std::move(notes)};
  return v;
}

Verdict robber_verdict(Verdict v, std::string rule, ResponderPtr r) {
  v.outcome = Outcome::RobberWins;
  v.rule = std::move(rule);
  v.robber = std::move(r);
  return v;
}

}  // namespace

Verdict classify(const PosetPtr& x, const ClassifyOptions& opts) {
  Verdict v;
  v.space = x;
  auto& trace = v.trace;
  trace.push_back("non-T0: no (input is a partial order)");

  if (!is_connected(*x)) {
    trace.push_back("disconnected: yes");
    return robber_verdict(std::move(v), "disconnected", make_fpf_responder(component_shift(x)));
  }
  trace.push_back("disconnected: no");

  if (x->size() == 1) {
    trace.push_back("singleton: yes");
    return cop_verdict(std::move(v), "singleton", StrategyKind::Singleton, max_strategy(x));
  }
  trace.push_back("singleton: no");

  FpfSearch fpf = find_fixed_point_free_map(x, opts.fpf_cap);
  if (fpf.map) {
    trace.push_back("fixed-point-free map: found");
    return robber_verdict(std::move(v), "fixed-point-free", make_fpf_responder(*fpf.map));
  }
  trace.push_back(fpf.attempted ? "fixed-point-free map: none exists"
                                : "fixed-point-free map: skipped, " + std::to_string(x->size()) +
                                      " points exceeds cap " + std::to_string(opts.fpf_cap));

  if (x->maximum()) {
    trace.push_back("maximum: yes");
    return cop_verdict(std::move(v), "maximum", StrategyKind::Max, max_strategy(x));
  }
  trace.push_back("maximum: no");

  ConditionReport c = check_conditions(x);
  if (x->height() == 1) {
    if (c.necessary_hold()) {
      trace.push_back("height 1: no cycle, S21 or S30op");
      return cop_verdict(std::move(v), "main1", StrategyKind::Height1, height1_strategy(x));
    }
    std::string which;
    auto r = obstruction_responder(x, c, which);
    trace.push_back("height 1: obstruction " + which);
    return robber_verdict(std::move(v), "main1", r);
  }
  trace.push_back("height 1: no (height " + std::to_string(x->height()) + ")");

  if (!c.necessary_hold()) {
    std::string which;
    auto r = obstruction_responder(x, c, which);
    trace.push_back("necessary conditions: " + which + " fails");
    if (which == "extrema-cycle" || which == "extrema-S21" || which == "extrema-S30op")
      r = make_extrema_responder(x, r);
    return robber_verdict(std::move(v), which, r);
  }
  trace.push_back("necessary conditions: hold");

  if (c.yoke_unbounded) {
    std::string which;
    ConditionReport only_yoke;
    only_yoke.yoke_unbounded = c.yoke_unbounded;
    auto r = obstruction_responder(x, only_yoke, which);
    trace.push_back("unbounded yoke: found");
    return robber_verdict(std::move(v), "unbounded-yoke", r);
  }
  trace.push_back("unbounded yoke: none");

  if (c.sufficient_hold()) {
    try {
      RegularPath g = main2_strategy(x);
      trace.push_back("sufficient conditions: hold");
      return cop_verdict(std::move(v), "main2", StrategyKind::Main2, std::move(g));
    } catch (const ConditionFailed& e) {
      trace.push_back(std::string("sufficient conditions: construction failed (") + e.what() + ")");
    }
  } else {
    trace.push_back("sufficient conditions: condition " + std::to_string(c.first_failed()) + " fails");
  }

  auto fractal = catalog_ptr("Fractal6");
  if (auto iso = is_isomorphic(fractal, x)) {
    trace.push_back("self-similar six-point space: isomorphic");
    return cop_verdict(std::move(v), "fractal", StrategyKind::Fractal,
                       map_path(iso->as_map(), fractal_strategy(fractal)));
  }
  trace.push_back("self-similar six-point space: not isomorphic");

  v.outcome = Outcome::Unknown;
  v.rule = "none";
  return v;
}

Verdict classify(const PreorderInput& input, const ClassifyOptions& opts) {
  auto parsed = from_relations(input);
  if (auto* report = std::get_if<NonT0Report>(&parsed)) {
    Verdict v;
    v.outcome = Outcome::RobberWins;
    v.rule = "non-T0";
    v.non_t0 = *report;
    v.trace.push_back("non-T0: " + report->x + " and " + report->y + " are not separated");
    return v;
  }
  return classify(share(std::get<FinitePoset>(std::move(parsed))), opts);
}

std::vector<RuleFiring> evaluate_all_rules(const PosetPtr& x, const ClassifyOptions& opts) {
  std::vector<RuleFiring> out;
  const bool connected = is_connected(*x);
  if (!connected) out.push_back({"disconnected", Outcome::RobberWins, ""});
  if (x->size() == 1) out.push_back({"singleton", Outcome::CopWins, ""});
  if (find_fixed_point_free_map(x, opts.fpf_cap).map) out.push_back({"fixed-point-free", Outcome::RobberWins, ""});
  if (x->maximum()) out.push_back({"maximum", Outcome::CopWins, ""});
  ConditionReport c = check_conditions(x);
  if (connected && x->height() == 1)
    out.push_back({"main1", c.necessary_hold() ? Outcome::CopWins : Outcome::RobberWins, ""});
  if (!c.necessary_hold()) out.push_back({"necessary", Outcome::RobberWins, c.describe()});
  if (c.yoke_unbounded) {
    std::string names;
    for (auto& n : image_names(*c.yoke_unbounded)) names += (names.empty() ? "" : " ") + n;
    out.push_back({"unbounded-yoke", Outcome::RobberWins, names});
  }
  if (connected && c.sufficient_hold()) out.push_back({"main2", Outcome::CopWins, ""});
  if (is_isomorphic(catalog_ptr("Fractal6"), x)) out.push_back({"fractal", Outcome::CopWins, ""});
  return out;
}

std::optional<std::string> validate_certificate(const Verdict& v, const ValidationOptions& opts) {
  if (v.non_t0) {
    if (!v.non_t0->map_is_continuous() || !v.non_t0->map_is_fixed_point_free())
      return "non-T0 map is not a fixed-point-free continuous map";
    return std::nullopt;
  }
  if (v.cop) {
    auto report = bounded_escape_search(v.cop->path, opts.budget, opts.unroll);
    if (report.escape) return "cop strategy escaped by " + report.escape->describe();
  }
  if (v.robber) {
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.robber_samples; ++i) {
      StepPath cop = random_step_path(v.space, rng, 6);
      try {
        StepPath out = v.robber->respond(cop);
        if (coincidence_step(cop, out)) return "responder caught by " + cop.describe();
      } catch (const Error& e) {
        return "responder failed on " + cop.describe() + ": " + e.what();
      }
    }
  }
  return std::nullopt;
}

std::string CrossValidationReport::summary() const {
  std::ostringstream out;
  out << "n=" << n << ": " << posets << " posets (" << cop_wins << " cop, " << robber_wins << " robber, "
      << unknown << " unknown); " << contradictions << " contradictions, " << certificate_failures
      << " certificate failures, " << dp_discrepancies << " DP discrepancies";
  return out.str();
}

CrossValidationReport cross_validate(int n, const CrossValidationOptions& opts) {
  CrossValidationReport rep;
  rep.n = n;
  std::mt19937_64 rng(opts.validation.seed);
  for (FinitePoset& p : enumerate_posets(n)) {
    PosetPtr x = share(std::move(p));
    ++rep.posets;
    Verdict v = classify(x, opts.classify);
    switch (v.outcome) {
      case Outcome::CopWins: ++rep.cop_wins; break;
      case Outcome::RobberWins: ++rep.robber_wins; break;
      case Outcome::Unknown: ++rep.unknown; break;
    }
    bool cop = false, robber = false;
    for (auto& f : evaluate_all_rules(x, opts.classify)) {
      cop |= f.outcome == Outcome::CopWins;
      robber |= f.outcome == Outcome::RobberWins;
    }
    if ((cop && robber) || (v.outcome == Outcome::CopWins && robber) || (v.outcome == Outcome::RobberWins && cop)) {
      ++rep.contradictions;
      rep.counterexamples.push_back("contradictory rules on " + x->describe());
    }
    if (opts.check_certificates) {
      if (auto fail = validate_certificate(v, opts.validation)) {
        ++rep.certificate_failures;
        rep.counterexamples.push_back("certificate (" + v.rule + ") on " + x->describe() + ": " + *fail);
      }
    }
    EnumeratedEscape reference(*x);
    for (int i = 0; i < opts.dp_samples; ++i) {
      StepPath g = random_step_path(x, rng, 4);
      if (escape_exists(*x, g).has_value() != reference(g)) {
        ++rep.dp_discrepancies;
        rep.counterexamples.push_back("escape search disagrees with enumeration on " + x->describe() +
                                      " against " + g.describe());
      }
    }
  }
  return rep;
}

}  // namespace pursuit
