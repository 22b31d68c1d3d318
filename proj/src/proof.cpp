#include "bes/proof.hpp"

#include <json.hpp>

namespace bes {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
  int arity;
  const char* latex;
};

constexpr RuleInfo kRules[] = {
    {Rule::Init, "init", 0, "\\mathsf{init}"},
    {Rule::LAnd, "L&", 1, "L{\\land}"},
    {Rule::RAnd, "R&", 2, "R{\\land}"},
    {Rule::LOr, "L|", 2, "L{\\lor}"},
    {Rule::ROr, "R|", 1, "R{\\lor}"},
    {Rule::LImp, "L->", 2, "L{\\to}"},
    {Rule::RImp, "R->", 1, "R{\\to}"},
    {Rule::LBot, "Lbot", 0, "L{\\bot}"},
    {Rule::RBot, "Rbot", 1, "R{\\bot}"},
    {Rule::Cut, "cut", 2, "\\mathsf{cut}"},
    {Rule::QAnd1, "Q&1*", 1, "Q{\\land}_1^*"},
    {Rule::QAnd2, "Q&2*", 1, "Q{\\land}_2^*"},
    {Rule::QOr, "Q|*", 1, "Q{\\lor}^*"},
    {Rule::QImp, "Q->*", 2, "Q{\\to}^*"},
    {Rule::QBot, "Qbot*", 1, "Q{\\bot}^*"},
};

const RuleInfo& info(Rule r) { return kRules[static_cast<int>(r)]; }

}  // namespace

const char* rule_name(Rule r) { return info(r).name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const RuleInfo& ri : kRules)
    if (name == ri.name) return ri.rule;
  return std::nullopt;
}

int rule_arity(Rule r) { return info(r).arity; }

bool is_q_rule(Rule r) { return static_cast<int>(r) >= static_cast<int>(Rule::QAnd1); }

// ---------------------------------------------------------------------------
// Checker

namespace {

// A candidate instance of a rule: the formulas each premise must carry and
// the principal formulas of the conclusion. Context variables are implicit;
// the conclusion check below quantifies over every legal split at once.
struct Instance {
  std::vector<FormulaSet> active_left, active_right;  // one entry per premise
  FormulaSet principal_left, principal_right;
};

// Side condition for rules with premises: each premise carries its active
// formulas, and for both sides
//   principal ∪ ⋃(premise ∖ active)  ⊆  conclusion  ⊆  principal ∪ ⋃premise.
// Every set in that interval is reachable by some choice of context split, so
// this is exactly "some split works".
bool instance_fits(const Proof& node, const Instance& inst, std::string* why) {
  for (std::size_t i = 0; i < node.premises.size(); ++i) {
    const Sequent& p = node.premises[i].conclusion;
    if (!inst.active_left[i].subset_of(p.left) || !inst.active_right[i].subset_of(p.right)) {
      if (why) *why = "premise " + std::to_string(i + 1) + " lacks its active formulas";
      return false;
    }
  }
  FormulaSet lower_l = inst.principal_left, upper_l = inst.principal_left;
  FormulaSet lower_r = inst.principal_right, upper_r = inst.principal_right;
  for (std::size_t i = 0; i < node.premises.size(); ++i) {
    const Sequent& p = node.premises[i].conclusion;
    lower_l = lower_l.unite(p.left.minus(inst.active_left[i]));
    upper_l = upper_l.unite(p.left);
    lower_r = lower_r.unite(p.right.minus(inst.active_right[i]));
    upper_r = upper_r.unite(p.right);
  }
  const Sequent& c = node.conclusion;
  if (!lower_l.subset_of(c.left)) {
    if (why) *why = "conclusion antecedent misses premise context {" + lower_l.minus(c.left).begin()->text() + "}";
    return false;
  }
  if (!c.left.subset_of(upper_l)) {
    if (why) *why = "conclusion antecedent has extra formula {" + c.left.minus(upper_l).begin()->text() + "}";
    return false;
  }
  if (!lower_r.subset_of(c.right)) {
    if (why) *why = "conclusion succedent misses premise context {" + lower_r.minus(c.right).begin()->text() + "}";
    return false;
  }
  if (!c.right.subset_of(upper_r)) {
    if (why) *why = "conclusion succedent has extra formula {" + c.right.minus(upper_r).begin()->text() + "}";
    return false;
  }
  return true;
}

// Collects candidate instances for the node's rule. For most rules the
// principal formula is some matching formula of the conclusion; for Cut it is
// a formula shared between the premises.
std::vector<Instance> candidates(const Proof& node) {
  std::vector<Instance> out;
  const Sequent& c = node.conclusion;
  auto push = [&](Instance inst) { out.push_back(std::move(inst)); };
  switch (node.rule) {
    case Rule::LAnd:
      for (const Formula& f : c.left)
        if (f.kind() == Conn::And)
          push({{{f.left(), f.right()}}, {{}}, {f}, {}});
      break;
    case Rule::RAnd:
      for (const Formula& f : c.right)
        if (f.kind() == Conn::And)
          push({{{}, {}}, {{f.left()}, {f.right()}}, {}, {f}});
      break;
    case Rule::LOr:
      for (const Formula& f : c.left)
        if (f.kind() == Conn::Or)
          push({{{f.left()}, {f.right()}}, {{}, {}}, {f}, {}});
      break;
    case Rule::ROr:
      for (const Formula& f : c.right)
        if (f.kind() == Conn::Or)
          push({{{}}, {{f.left(), f.right()}}, {}, {f}});
      break;
    case Rule::LImp:
      for (const Formula& f : c.left)
        if (f.kind() == Conn::Imp)
          push({{{}, {f.right()}}, {{f.left()}, {}}, {f}, {}});
      break;
    case Rule::RImp:
      for (const Formula& f : c.right)
        if (f.kind() == Conn::Imp)
          push({{{f.left()}}, {{f.right()}}, {}, {f}});
      break;
    case Rule::RBot:
      if (c.right.contains(Formula::bottom())) push({{{}}, {{}}, {}, {Formula::bottom()}});
      break;
    case Rule::Cut:
      if (node.premises.size() == 2)
        for (const Formula& f : node.premises[0].conclusion.right)
          if (node.premises[1].conclusion.left.contains(f))
            push({{{}, {f}}, {{f}, {}}, {}, {}});
      break;
    default:
      break;
  }
  return out;
}

CheckResult check_node(const Proof& node, bool allow_cut, const std::string& path) {
  auto reject = [&](const std::string& msg) {
    return CheckResult{false, "node " + path + " [" + rule_name(node.rule) + "] \"" +
                                  node.conclusion.text() + "\": " + msg};
  };

  if (is_q_rule(node.rule)) return reject("Q* placeholder is not a CLp rule");
  if (node.rule == Rule::Cut && !allow_cut) return reject("Cut is not permitted here");
  if (static_cast<int>(node.premises.size()) != rule_arity(node.rule))
    return reject("expected " + std::to_string(rule_arity(node.rule)) + " premises, got " +
                  std::to_string(node.premises.size()));

  // Axioms absorb arbitrary context on both sides.
  if (node.rule == Rule::Init) {
    for (const Formula& f : node.conclusion.left)
      if (node.conclusion.right.contains(f)) return {};
    return reject("no formula occurs on both sides");
  }
  if (node.rule == Rule::LBot) {
    if (node.conclusion.left.contains(Formula::bottom())) return {};
    return reject("antecedent does not contain bot");
  }

  std::vector<Instance> cands = candidates(node);
  if (cands.empty()) return reject("no formula of the required shape to introduce");
  std::string first_why;
  for (const Instance& inst : cands) {
    std::string why;
    if (instance_fits(node, inst, &why)) return {};
    if (first_why.empty()) first_why = why;
  }
  return reject(first_why);
}

CheckResult check_rec(const Proof& node, bool allow_cut, const std::string& path) {
  CheckResult r = check_node(node, allow_cut, path);
  if (!r.ok) return r;
  for (std::size_t i = 0; i < node.premises.size(); ++i) {
    r = check_rec(node.premises[i], allow_cut, path + "." + std::to_string(i + 1));
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace

CheckResult check_proof(const Proof& p, bool allow_cut) { return check_rec(p, allow_cut, "root"); }

CheckResult check_proof_node(const Proof& p, bool allow_cut) {
  return check_node(p, allow_cut, "node");
}

std::size_t proof_size(const Proof& p) {
  std::size_t n = 1;
  for (const Proof& q : p.premises) n += proof_size(q);
  return n;
}

bool contains_rule(const Proof& p, Rule r) {
  if (p.rule == r) return true;
  for (const Proof& q : p.premises)
    if (contains_rule(q, r)) return true;
  return false;
}

Proof weaken_proof(const Proof& p, const FormulaSet& add_left, const FormulaSet& add_right) {
  Proof out;
  out.conclusion.left = p.conclusion.left.unite(add_left);
  out.conclusion.right = p.conclusion.right.unite(add_right);
  out.rule = p.rule;
  for (const Proof& q : p.premises) out.premises.push_back(weaken_proof(q, add_left, add_right));
  return out;
}

// ---------------------------------------------------------------------------
// Rendering and serialization

namespace {

void text_rec(const Proof& p, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "[";
  out += rule_name(p.rule);
  out += "] ";
  out += p.conclusion.text();
  out += "\n";
  for (const Proof& q : p.premises) text_rec(q, depth + 1, out);
}

void latex_rec(const Proof& p, std::string& out) {
  for (const Proof& q : p.premises) latex_rec(q, out);
  if (p.premises.empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{\\scriptsize{$" + std::string(info(p.rule).latex) + "$}}\n";
  static const char* kInf[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC"};
  out += std::string(kInf[p.premises.size()]) + "{$" + latex(p.conclusion) + "$}\n";
}

nlohmann::ordered_json to_json_rec(const Proof& p) {
  nlohmann::ordered_json j;
  j["sequent"] = p.conclusion.text();
  j["rule"] = rule_name(p.rule);
  j["premises"] = nlohmann::ordered_json::array();
  for (const Proof& q : p.premises) j["premises"].push_back(to_json_rec(q));
  return j;
}

Proof from_json_rec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("sequent") || !j.contains("rule"))
    throw Error("proof JSON node must carry 'sequent' and 'rule'");
  Proof p;
  p.conclusion = parse_sequent(j.at("sequent").get<std::string>());
  auto r = rule_from_name(j.at("rule").get<std::string>());
  if (!r) throw Error("unknown rule name: " + j.at("rule").get<std::string>());
  p.rule = *r;
  if (j.contains("premises"))
    for (const auto& q : j.at("premises")) p.premises.push_back(from_json_rec(q));
  return p;
}

}  // namespace

std::string to_text(const Proof& p) {
  std::string out;
  text_rec(p, 0, out);
  return out;
}

std::string to_latex(const Proof& p) {
  std::string out = "\\begin{prooftree}\n";
  latex_rec(p, out);
  out += "\\end{prooftree}\n";
  return out;
}

std::string proof_to_json(const Proof& p) { return to_json_rec(p).dump(2); }

Proof proof_from_json(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  return from_json_rec(j);
}

}  // namespace bes
