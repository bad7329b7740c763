#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poset_pursuit/conditions.hpp"
#include "poset_pursuit/poset.hpp"
#include "poset_pursuit/responders.hpp"
#include "poset_pursuit/strategies.hpp"

namespace pursuit {

enum class Outcome { CopWins, RobberWins, Unknown };
std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::string rule;             // name of the rule that decided, or "none"
  PosetPtr space;               // null for non-T0 input
  std::optional<StrategyCertificate> cop;  // present for CopWins
  ResponderPtr robber;          // present for RobberWins on a T0 space
  std::optional<NonT0Report> non_t0;
  std::vector<std::string> trace;  // one line per rule consulted

  std::string summary() const;
};

struct ClassifyOptions {
  int fpf_cap = 8;  // largest space handed to the fixed-point-free search
};

// Rules in order: non-T0, disconnected, singleton, fixed-point-free map,
// maximum, height 1, necessary conditions, unbounded yoke, sufficient
// conditions, the six-point self-similar space. The first rule that fires
// decides.
Verdict classify(const PosetPtr& x, const ClassifyOptions& opts = {});
Verdict classify(const PreorderInput& input, const ClassifyOptions& opts = {});

// Every rule evaluated independently, for consistency checks.
struct RuleFiring {
  std::string rule;
  Outcome outcome;
  std::string detail;
};
std::vector<RuleFiring> evaluate_all_rules(const PosetPtr& x, const ClassifyOptions& opts = {});

// Re-checks a verdict's certificate: bounded search for a cop strategy,
// sampled cop paths for a responder. Returns a description of the first
// failure, or nothing.
struct ValidationOptions {
  int budget = 3, unroll = 4;
  int robber_samples = 200;
  std::uint64_t seed = 1;
};
std::optional<std::string> validate_certificate(const Verdict& v, const ValidationOptions& opts = {});

struct CrossValidationOptions {
  ValidationOptions validation;
  ClassifyOptions classify;
  int dp_samples = 40;  // cop paths per poset compared against enumeration
  bool check_certificates = true;
};

struct CrossValidationReport {
  int n = 0;
  int posets = 0;
  int cop_wins = 0, robber_wins = 0, unknown = 0;
  int contradictions = 0;
  int certificate_failures = 0;
  int dp_discrepancies = 0;
  std::vector<std::string> counterexamples;

  bool clean() const { return contradictions == 0 && certificate_failures == 0 && dp_discrepancies == 0; }
  std::string summary() const;
};

CrossValidationReport cross_validate(int n, const CrossValidationOptions& opts = {});

}  // namespace pursuit
