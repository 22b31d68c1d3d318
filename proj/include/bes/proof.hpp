#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bes/syntax.hpp"

namespace bes {

/// Rule labels for proof nodes. The Q* labels are placeholders produced by
/// substituting into quasi-simulation derivations; they are never accepted by
/// check_proof and exist only to be rewritten away.
enum class Rule {
  Init,
  LAnd,
  RAnd,
  LOr,
  ROr,
  LImp,
  RImp,
  LBot,
  RBot,
  Cut,
  QAnd1,
  QAnd2,
  QOr,
  QImp,
  QBot,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
int rule_arity(Rule r);
bool is_q_rule(Rule r);

/// Proof tree; premises are ordered as printed in the rule.
struct Proof {
  Sequent conclusion;
  Rule rule = Rule::Init;
  std::vector<Proof> premises;
};

struct CheckResult {
  bool ok = true;
  std::string error;
  explicit operator bool() const { return ok; }
};

/// Validates every node as a legal multiplicative instance under set
/// semantics. Binary rules accept any context split whose unions produce the
/// conclusion; Cut additionally requires allow_cut. Rejections name the
/// offending node and the violated side condition.
CheckResult check_proof(const Proof& p, bool allow_cut);
/// Validates only the root node's side condition, ignoring the subtrees.
CheckResult check_proof_node(const Proof& p, bool allow_cut);

std::size_t proof_size(const Proof& p);
bool contains_rule(const Proof& p, Rule r);
/// Adds fixed context to every node of a valid proof; the result is valid and
/// concludes the weakened sequent (init and Lbot leaves absorb the extras).
Proof weaken_proof(const Proof& p, const FormulaSet& add_left, const FormulaSet& add_right);

std::string to_text(const Proof& p);
std::string to_latex(const Proof& p);
std::string proof_to_json(const Proof& p);
Proof proof_from_json(std::string_view json_text);

}  // namespace bes
