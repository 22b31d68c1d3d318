#include "bes/simulation.hpp"

#include <algorithm>
#include <cassert>

#include <json.hpp>

namespace bes {

// ---------------------------------------------------------------------------
// Atomic mapping

Atom proxy_atom(const Formula& f) {
  assert(!f.is_atom());
  return Atom::from_name("@(" + f.text() + ")");
}

Atom AtomicMapping::map(const Formula& f) const {
  if (f.is_atom()) return f.as_atom();
  auto it = forward.find(f);
  if (it == forward.end()) throw Error("scope violation: " + f.text() + " is not mapped");
  return it->second;
}

Formula AtomicMapping::unmap(const Atom& a) const {
  if (!a.mapped()) return Formula::atom(a);
  auto it = inverse.find(a);
  if (it == inverse.end()) throw Error("unmapped atom: " + a.name());
  return it->second;
}

AtomSet AtomicMapping::map_set(const FormulaSet& fs) const {
  AtomSet out;
  for (const Formula& f : fs) out.insert(map(f));
  return out;
}

FormulaSet AtomicMapping::unmap_set(const AtomSet& as) const {
  FormulaSet out;
  for (const Atom& a : as) out.insert(unmap(a));
  return out;
}

AtomicMapping atomic_mapping(const FormulaSet& sigma) {
  AtomicMapping m;
  m.scope = subformula_closure(sigma);
  for (const Formula& f : m.scope) {
    Atom a = f.is_atom() ? f.as_atom() : proxy_atom(f);
    m.forward.emplace(f, a);
    if (!f.is_atom()) m.inverse.emplace(a, f);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Simulation bases

Base simulation_base_flavored(const FormulaSet& sigma, const AtomicMapping& m, SimFlavor flavor) {
  FormulaSet closed = subformula_closure(sigma);
  for (const Formula& f : closed)
    if (!m.in_scope(f)) throw Error("scope violation: " + f.text() + " is outside the mapping");

  bool quasi = flavor == SimFlavor::Quasi;
  std::vector<SchemaRule> family;
  for (const Formula& f : m.scope) {
    if (f.is_atom()) continue;  // atoms are their own proxies and need no rules
    Atom x = m.map(f);
    switch (f.kind()) {
      case Conn::And: {
        Atom a = m.map(f.left()), b = m.map(f.right());
        if (quasi) {
          family.push_back({SchemaTag::QAnd1, {x, a}});
          family.push_back({SchemaTag::QAnd2, {x, b}});
        } else {
          family.push_back({SchemaTag::SimLAnd, {x, a, b}});
        }
        family.push_back({SchemaTag::SimRAnd, {x, a, b}});
        break;
      }
      case Conn::Or: {
        Atom a = m.map(f.left()), b = m.map(f.right());
        if (quasi)
          family.push_back({SchemaTag::QOr, {x, a, b}});
        else
          family.push_back({SchemaTag::SimLOr, {x, a, b}});
        family.push_back({SchemaTag::SimROr, {x, a, b}});
        break;
      }
      case Conn::Imp: {
        Atom a = m.map(f.left()), b = m.map(f.right());
        if (quasi) family.push_back({SchemaTag::QImp, {x, a, b}});
        else
          family.push_back({SchemaTag::SimLImp, {x, a, b}});
        family.push_back({SchemaTag::SimRImp, {x, a, b}});
        break;
      }
      case Conn::Bottom: {
        if (quasi) {
          family.push_back({SchemaTag::QBot, {x}});
        } else {
          family.push_back({SchemaTag::SimLBot, {x}});
          family.push_back({SchemaTag::SimRBot, {x}});
        }
        break;
      }
      default:
        break;
    }
  }
  Closure closure = flavor == SimFlavor::FullST ? Closure::ST : Closure::HS;
  auto info = std::make_shared<SimInfo>(SimInfo{m, flavor});
  return Base::make({}, closure).with_schemas(std::move(family)).with_sim(std::move(info));
}

Base simulation_base(const FormulaSet& sigma, const AtomicMapping& m, SimulationVariant v) {
  return simulation_base_flavored(
      sigma, m, v == SimulationVariant::Full ? SimFlavor::FullST : SimFlavor::Quasi);
}

// ---------------------------------------------------------------------------
// Context prepending

namespace {

bool contains_marked(const AtomicDerivation& d, const std::set<std::string>& marked) {
  if (d.just.kind == Justification::Kind::GroundAxiom && marked.count(d.just.rule_id)) return true;
  for (const AtomicDerivation& c : d.children)
    if (contains_marked(c, marked)) return true;
  return false;
}

struct PrependResult {
  AtomicDerivation node;
  bool touched = false;  // subtree contained a marked axiom
};

PrependResult prepend_rec(const AtomicDerivation& d, const AtomSet& gamma,
                          const std::set<std::string>& marked, bool prepend_all) {
  if (d.just.kind == Justification::Kind::GroundAxiom && marked.count(d.just.rule_id)) {
    // The marked axiom => Theta turns into an identity axiom already licensed
    // by Ainit: gamma joins the antecedent and some member of gamma must
    // appear among the succedent atoms.
    std::optional<Atom> common;
    for (const Atom& a : gamma)
      if (d.sequent.right.contains(a)) {
        common = a;
        break;
      }
    if (!common)
      throw Error("prepend_context: marked axiom " + d.just.rule_id +
                  " concludes nothing from the prepended context");
    AtomicDerivation out;
    out.sequent = {d.sequent.left.unite(gamma), d.sequent.right};
    out.just = {Justification::Kind::Ainit, "", std::nullopt, common, {}};
    return {std::move(out), true};
  }
  AtomicDerivation out;
  out.just = d.just;
  bool touched = false;
  for (const AtomicDerivation& c : d.children) {
    PrependResult sub = prepend_rec(c, gamma, marked, prepend_all);
    touched = touched || sub.touched;
    out.children.push_back(std::move(sub.node));
  }
  bool add_here = prepend_all || touched;
  out.sequent = add_here ? AtomicSequent{d.sequent.left.unite(gamma), d.sequent.right}
                         : d.sequent;
  // Supports in the justification mirror the children's sequents.
  out.just.supports.clear();
  for (const AtomicDerivation& c : out.children) out.just.supports.push_back(c.sequent);
  return {std::move(out), touched};
}

}  // namespace

AtomicDerivation prepend_context(const AtomicDerivation& d, const AtomSet& gamma,
                                 const std::set<std::string>& marked) {
  if (gamma.empty()) return d;
  bool prepend_all = marked.empty();
  if (!prepend_all && !contains_marked(d, marked)) return d;  // already context free
  return prepend_rec(d, gamma, marked, prepend_all).node;
}

// ---------------------------------------------------------------------------
// Substitution into CLp

namespace {

FormulaSet unmap_side(const AtomSet& side, const AtomicMapping& m) {
  FormulaSet out;
  for (const Atom& a : side) out.insert(m.unmap(a));
  return out;
}

Rule rule_for_schema(SchemaTag t) {
  switch (t) {
    case SchemaTag::SimLAnd: return Rule::LAnd;
    case SchemaTag::SimRAnd: return Rule::RAnd;
    case SchemaTag::SimLOr: return Rule::LOr;
    case SchemaTag::SimROr: return Rule::ROr;
    case SchemaTag::SimLImp: return Rule::LImp;
    case SchemaTag::SimRImp: return Rule::RImp;
    case SchemaTag::SimLBot: return Rule::LBot;
    case SchemaTag::SimRBot: return Rule::RBot;
    case SchemaTag::QAnd1: return Rule::QAnd1;
    case SchemaTag::QAnd2: return Rule::QAnd2;
    case SchemaTag::QOr: return Rule::QOr;
    case SchemaTag::QImp: return Rule::QImp;
    case SchemaTag::QBot: return Rule::QBot;
    default: throw Error("schema has no rule image");
  }
}

}  // namespace

Proof substitute(const AtomicDerivation& d, const AtomicMapping& m) {
  Proof p;
  p.conclusion = {unmap_side(d.sequent.left, m), unmap_side(d.sequent.right, m)};
  switch (d.just.kind) {
    case Justification::Kind::Ainit: p.rule = Rule::Init; break;
    case Justification::Kind::Acut: p.rule = Rule::Cut; break;
    case Justification::Kind::SchemaAxiom:
    case Justification::Kind::Schema: p.rule = rule_for_schema(d.just.schema->tag); break;
    case Justification::Kind::GroundAxiom:
    case Justification::Kind::GroundRule:
      throw Error("substitute: derivation uses base rule '" + d.just.rule_id +
                  "' outside the simulation family");
  }
  for (const AtomicDerivation& c : d.children) p.premises.push_back(substitute(c, m));
  return p;
}

// ---------------------------------------------------------------------------
// Q* rewriting

namespace {

Proof init_node(FormulaSet left, FormulaSet right) {
  return Proof{{std::move(left), std::move(right)}, Rule::Init, {}};
}

// Builds the gadget for one Q* node whose premises are already rewritten.
// The principal formula is recovered from the sequents; every candidate is
// validated locally before being accepted.
Proof rewrite_node(const Proof& q) {
  const Sequent& concl = q.conclusion;
  switch (q.rule) {
    case Rule::QAnd1:
    case Rule::QAnd2: {
      bool first = q.rule == Rule::QAnd1;
      for (const Formula& f : q.premises[0].conclusion.right) {
        if (f.kind() != Conn::And) continue;
        Formula proj = first ? f.left() : f.right();
        if (!concl.right.contains(proj)) continue;
        Proof leaf = init_node({f.left(), f.right()}, {proj});
        Proof land{{{f}, {proj}}, Rule::LAnd, {leaf}};
        Proof cut{concl, Rule::Cut, {q.premises[0], land}};
        if (check_proof_node(cut, true).ok) return cut;
      }
      break;
    }
    case Rule::QOr: {
      for (const Formula& f : q.premises[0].conclusion.right) {
        if (f.kind() != Conn::Or) continue;
        if (!concl.right.contains(f.left()) || !concl.right.contains(f.right())) continue;
        FormulaSet sigma = q.premises[0].conclusion.right.minus(f);
        Proof la = init_node({f.left()}, sigma.with(f.left()));
        Proof lb = init_node({f.right()}, sigma.with(f.right()));
        Proof lor{{{f}, sigma.with(f.left()).with(f.right())}, Rule::LOr, {la, lb}};
        Proof cut{concl, Rule::Cut, {q.premises[0], lor}};
        if (check_proof_node(cut, true).ok && check_proof_node(lor, true).ok) return cut;
      }
      break;
    }
    case Rule::QBot: {
      Proof lbot{{{Formula::bottom()}, {}}, Rule::LBot, {}};
      Proof cut{concl, Rule::Cut, {q.premises[0], lbot}};
      if (check_proof_node(cut, true).ok) return cut;
      break;
    }
    case Rule::QImp: {
      const Sequent& c1 = q.premises[0].conclusion;
      const Sequent& c2 = q.premises[1].conclusion;
      for (const Formula& f : c1.right) {
        if (f.kind() != Conn::Imp) continue;
        if (!c2.right.contains(f.left()) || !concl.right.contains(f.right())) continue;
        Formula a = f.left(), b = f.right();
        Proof la = init_node({a}, {a});
        Proof lb = init_node({b}, {b});
        Proof limp{{{f, a}, {b}}, Rule::LImp, {la, lb}};
        // Cut a first against the implication gadget, then cut the
        // implication itself.
        Sequent inner_concl{c2.left.with(f), c2.right.minus(a).with(b)};
        Proof inner{inner_concl, Rule::Cut, {q.premises[1], limp}};
        Proof outer{concl, Rule::Cut, {q.premises[0], inner}};
        if (check_proof_node(inner, true).ok && check_proof_node(outer, true).ok) return outer;
      }
      break;
    }
    default:
      return q;
  }
  throw Error("rewrite_q_rules: no gadget fits node \"" + concl.text() + "\" [" +
              rule_name(q.rule) + "]");
}

}  // namespace

Proof rewrite_q_rules(const Proof& p) {
  Proof out;
  out.conclusion = p.conclusion;
  out.rule = p.rule;
  for (const Proof& c : p.premises) out.premises.push_back(rewrite_q_rules(c));
  if (!is_q_rule(out.rule)) return out;
  return rewrite_node(out);
}

// ---------------------------------------------------------------------------
// Extraction pipeline

ExtractionReport extract_proof(const FormulaSet& gamma, const FormulaSet& delta,
                               SimulationVariant v) {
  Sequent goal{gamma, delta};
  Decision d = prove(goal);
  if (!d.provable()) throw Error("extract_proof: sequent is not valid: " + goal.text());

  ExtractionReport rep;
  rep.variant = v;
  rep.goal = goal;

  FormulaSet sigma = gamma.unite(delta);
  rep.mapping = atomic_mapping(sigma);
  const AtomicMapping& m = rep.mapping;
  Base sim = simulation_base(sigma, m, v);

  // One axiom per antecedent formula.
  std::vector<GroundRule> hyps;
  std::set<std::string> marked;
  int k = 0;
  for (const Formula& f : gamma) {
    std::string id = "hyp" + std::to_string(++k);
    hyps.push_back({{}, {{}, {m.map(f)}}, id});
    marked.insert(id);
  }
  Base extended = sim.extend(hyps);

  AtomSet scope_atoms = m.map_set(m.scope);
  DerivableSet ds = saturate(extended, scope_atoms);
  rep.stats.antichain = ds.minimal().size();

  AtomSet gamma_at = m.map_set(gamma);
  AtomSet delta_at = m.map_set(delta);
  std::optional<AtomicSequent> goal_min;
  for (const AtomicSequent& s : ds.minimal())
    if (s.left.empty() && s.right.subset_of(delta_at)) {
      goal_min = s;
      break;
    }
  if (!goal_min)
    throw Error("extract_proof internal: no derivation of the mapped goal (bug signal)");

  rep.stage_pi = derivation_from(ds, *goal_min);
  CheckResult c0 = check_derivation(extended, rep.stage_pi);
  if (!c0.ok) throw Error("extract_proof internal: stage pi invalid: " + c0.error);
  rep.stats.pi_nodes = derivation_size(rep.stage_pi.root);

  AtomicDerivation pi_prime = prepend_context(rep.stage_pi.root, gamma_at, marked);
  rep.stage_pi_prime = {pi_prime, AtomicSequent{gamma_at, goal_min->right}};
  CheckResult c1 = check_derivation(sim, rep.stage_pi_prime);
  if (!c1.ok) throw Error("extract_proof internal: stage pi' invalid: " + c1.error);
  rep.stats.pi_prime_nodes = derivation_size(pi_prime);

  rep.stage_pi_dprime = substitute(pi_prime, m);
  rep.stats.pi_dprime_nodes = proof_size(rep.stage_pi_dprime);
  Proof cutful = rep.stage_pi_dprime;
  if (v == SimulationVariant::Full) {
    CheckResult c2 = check_proof(cutful, true);
    if (!c2.ok) throw Error("extract_proof internal: stage pi'' invalid: " + c2.error);
  } else {
    cutful = rewrite_q_rules(cutful);
    CheckResult c2 = check_proof(cutful, true);
    if (!c2.ok) throw Error("extract_proof internal: Q-rewrite invalid: " + c2.error);
    rep.stage_q_rewritten = cutful;
    rep.stats.rewritten_nodes = proof_size(cutful);
  }

  // The derivation concludes Gamma => Sigma_At for some Sigma_At within
  // Delta_At; the missing succedent formulas are restored by weakening, which
  // the init and Lbot leaves absorb.
  FormulaSet add_left = gamma.minus(cutful.conclusion.left);
  FormulaSet add_right = delta.minus(cutful.conclusion.right);
  Proof weakened = weaken_proof(cutful, add_left, add_right);
  if (!(weakened.conclusion == goal))
    throw Error("extract_proof internal: conclusion repair failed");

  rep.final_proof = eliminate_cuts(weakened);
  CheckResult c3 = check_proof(rep.final_proof, false);
  if (!c3.ok) throw Error("extract_proof internal: final proof invalid: " + c3.error);
  if (!(rep.final_proof.conclusion == goal))
    throw Error("extract_proof internal: final conclusion mismatch");
  rep.stats.final_nodes = proof_size(rep.final_proof);
  return rep;
}

// ---------------------------------------------------------------------------
// Reports

std::string report_to_text(const ExtractionReport& r) {
  std::string out;
  out += "goal: " + r.goal.text() + "\n";
  out += "variant: " + std::string(r.variant == SimulationVariant::Full ? "full" : "quasi") + "\n";
  out += "mapping:\n";
  for (const auto& [f, a] : r.mapping.forward)
    if (!f.is_atom()) out += "  " + a.name() + " <- " + f.text() + "\n";
  out += "antichain size: " + std::to_string(r.stats.antichain) + "\n";
  out += "stage pi (" + std::to_string(r.stats.pi_nodes) + " nodes):\n" + to_text(r.stage_pi);
  out += "stage pi' (" + std::to_string(r.stats.pi_prime_nodes) + " nodes):\n" +
         to_text(r.stage_pi_prime);
  out += "stage pi'' (" + std::to_string(r.stats.pi_dprime_nodes) + " nodes):\n" +
         to_text(r.stage_pi_dprime);
  if (r.stage_q_rewritten)
    out += "q-rewritten (" + std::to_string(r.stats.rewritten_nodes) + " nodes):\n" +
           to_text(*r.stage_q_rewritten);
  out += "final (" + std::to_string(r.stats.final_nodes) + " nodes):\n" + to_text(r.final_proof);
  return out;
}

std::string report_to_json(const ExtractionReport& r) {
  nlohmann::ordered_json j;
  j["goal"] = r.goal.text();
  j["variant"] = r.variant == SimulationVariant::Full ? "full" : "quasi";
  auto mapping = nlohmann::ordered_json::object();
  for (const auto& [f, a] : r.mapping.forward)
    if (!f.is_atom()) mapping[a.name()] = f.text();
  j["mapping"] = mapping;
  j["stage_pi"] = nlohmann::json::parse(derivation_to_json(r.stage_pi));
  j["stage_pi_prime"] = nlohmann::json::parse(derivation_to_json(r.stage_pi_prime));
  j["stage_pi_dprime"] = nlohmann::json::parse(proof_to_json(r.stage_pi_dprime));
  if (r.stage_q_rewritten)
    j["stage_q_rewritten"] = nlohmann::json::parse(proof_to_json(*r.stage_q_rewritten));
  j["final"] = nlohmann::json::parse(proof_to_json(r.final_proof));
  j["statistics"] = {{"antichain", r.stats.antichain},
                     {"pi_nodes", r.stats.pi_nodes},
                     {"pi_prime_nodes", r.stats.pi_prime_nodes},
                     {"pi_dprime_nodes", r.stats.pi_dprime_nodes},
                     {"rewritten_nodes", r.stats.rewritten_nodes},
                     {"final_nodes", r.stats.final_nodes}};
  return j.dump(2);
}

std::string report_to_latex(const ExtractionReport& r) {
  std::string out = "% stage pi''\n" + to_latex(r.stage_pi_dprime);
  if (r.stage_q_rewritten) out += "% q-rewritten\n" + to_latex(*r.stage_q_rewritten);
  out += "% final\n" + to_latex(r.final_proof);
  return out;
}

// ---------------------------------------------------------------------------
// The cut-contrast counterexample

Prop6Report prop6_counterexample() {
  FormulaSet sigma{parse_formula("q & r"), parse_formula("q")};
  AtomicMapping m = atomic_mapping(sigma);
  Atom x = m.map(parse_formula("q & r"));
  Atom q = Atom::user("q"), r = Atom::user("r");
  AtomSet uni{x, q, r};

  GroundRule ax{{}, {{}, {x}}, "prop6ax"};

  Prop6Report rep;
  auto run = [&](SimFlavor flavor, const char* tag,
                 std::initializer_list<std::pair<AtomicSequent, bool>> queries) {
    Base base = simulation_base_flavored(sigma, m, flavor).extend({ax});
    DerivableSet ds = saturate(base, uni);
    for (const auto& [s, expected] : queries)
      rep.facts.push_back({tag, s.text(), expected, ds.derives(s)});
  };

  run(SimFlavor::FullHS, "hs",
      {{{{}, {x}}, true},
       {{{x}, {q}}, true},
       {{{x}, {r}}, true},
       {{{}, {q}}, false},
       {{{}, {r}}, false}});
  run(SimFlavor::FullST, "st", {{{{}, {q}}, true}});

  rep.ok = true;
  for (const Prop6Report::Fact& f : rep.facts) rep.ok = rep.ok && f.ok();
  return rep;
}

std::string Prop6Report::text() const {
  std::string out = "cut contrast over the scope of {q & r, q}, base extended by an axiom for " +
                    std::string("@(q & r):\n");
  for (const Fact& f : facts) {
    out += "  [" + f.variant + "] " + f.query + "  expected " +
           (f.expected ? "derivable" : "underivable") + ", got " +
           (f.actual ? "derivable" : "underivable") + (f.ok() ? "" : "  MISMATCH") + "\n";
  }
  out += ok ? "all facts hold: without Acut the axiom for @(q & r) cannot be composed with "
              "@(q & r) => q, so => q stays underivable; with Acut it is derivable\n"
            : "MISMATCH: see facts above\n";
  return out;
}

std::string Prop6Report::json() const {
  nlohmann::ordered_json j;
  j["facts"] = nlohmann::ordered_json::array();
  for (const Fact& f : facts)
    j["facts"].push_back({{"variant", f.variant},
                          {"query", f.query},
                          {"expected", f.expected},
                          {"actual", f.actual},
                          {"ok", f.ok()}});
  j["ok"] = ok;
  return j.dump(2);
}

}  // namespace bes
