#include "bes/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace bes::checks {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Timer {
  double start = now_seconds();
  double elapsed() const { return now_seconds() - start; }
};

std::vector<Atom> named_atoms(std::initializer_list<const char*> names) {
  std::vector<Atom> out;
  for (const char* n : names) out.push_back(Atom::user(n));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

Formula random_formula(Rng& g, const std::vector<Atom>& atoms, int degree_budget,
                       bool allow_bot) {
  if (degree_budget <= 0) return Formula::atom(atoms[g.below(atoms.size())]);
  switch (g.below(allow_bot ? 6 : 5)) {
    case 0:
    case 1: return Formula::atom(atoms[g.below(atoms.size())]);
    case 2:
    case 3:
    case 4: {
      int left = static_cast<int>(g.below(static_cast<std::uint64_t>(degree_budget)));
      Formula a = random_formula(g, atoms, left, allow_bot);
      Formula b = random_formula(g, atoms, degree_budget - 1 - left, allow_bot);
      switch (g.below(3)) {
        case 0: return Formula::conj(a, b);
        case 1: return Formula::disj(a, b);
        default: return Formula::imp(a, b);
      }
    }
    default: return Formula::bottom();
  }
}

Sequent random_sequent(Rng& g, const std::vector<Atom>& atoms, int total_degree,
                       std::size_t max_per_side, bool allow_bot) {
  Sequent s;
  int budget = total_degree;
  std::size_t n_left = g.below(max_per_side + 1);
  std::size_t n_right = g.below(max_per_side + 1);
  if (n_left + n_right == 0) n_right = 1;
  for (std::size_t i = 0; i < n_left; ++i) {
    int d = static_cast<int>(g.below(static_cast<std::uint64_t>(budget) + 1));
    budget -= d;
    s.left.insert(random_formula(g, atoms, d, allow_bot));
  }
  for (std::size_t i = 0; i < n_right; ++i) {
    int d = static_cast<int>(g.below(static_cast<std::uint64_t>(budget) + 1));
    budget -= d;
    s.right.insert(random_formula(g, atoms, d, allow_bot));
  }
  return s;
}

AtomicSequent random_atomic_sequent(Rng& g, const std::vector<Atom>& atoms) {
  AtomicSequent s;
  for (const Atom& a : atoms) {
    switch (g.below(4)) {
      case 0: s.left.insert(a); break;
      case 1: s.right.insert(a); break;
      case 2:
        s.left.insert(a);
        s.right.insert(a);
        break;
      default: break;
    }
  }
  return s;
}

Base random_base(Rng& g, const std::vector<Atom>& atoms, std::size_t max_rules, Closure c) {
  std::vector<GroundRule> rules;
  std::size_t n = g.below(max_rules + 1);
  auto sparse_sequent = [&]() {
    AtomicSequent s;
    for (const Atom& a : atoms) {
      std::uint64_t roll = g.below(6);
      if (roll == 0) s.left.insert(a);
      if (roll == 1) s.right.insert(a);
    }
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    GroundRule r;
    std::size_t premises = g.below(3);  // 0, 1 or 2
    for (std::size_t k = 0; k < premises; ++k) r.premises.push_back(sparse_sequent());
    r.conclusion = sparse_sequent();
    rules.push_back(std::move(r));
  }
  return Base::make(std::move(rules), c);
}

std::vector<Formula> enumerate_formulas(const std::vector<Atom>& atoms, int max_degree,
                                        bool allow_bot) {
  // by_degree[d] lists all formulas of degree exactly d.
  std::vector<std::vector<Formula>> by_degree(static_cast<std::size_t>(max_degree) + 1);
  for (const Atom& a : atoms) by_degree[0].push_back(Formula::atom(a));
  if (max_degree >= 1 && allow_bot) by_degree[1].push_back(Formula::bottom());
  for (int d = 1; d <= max_degree; ++d) {
    for (int dl = 0; dl <= d - 1; ++dl) {
      int dr = d - 1 - dl;
      for (const Formula& l : by_degree[static_cast<std::size_t>(dl)])
        for (const Formula& r : by_degree[static_cast<std::size_t>(dr)]) {
          by_degree[static_cast<std::size_t>(d)].push_back(Formula::conj(l, r));
          by_degree[static_cast<std::size_t>(d)].push_back(Formula::disj(l, r));
          by_degree[static_cast<std::size_t>(d)].push_back(Formula::imp(l, r));
        }
    }
  }
  std::vector<Formula> out;
  for (auto& bucket : by_degree)
    for (Formula& f : bucket) out.push_back(std::move(f));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Naive oracle

std::set<AtomicSequent> naive_derivable_set(const Base& b, const AtomSet& universe) {
  for (const SchemaRule& s : b.schemas())
    if (s.tag != SchemaTag::Ainit && s.tag != SchemaTag::Acut)
      throw Error("naive oracle handles ground bases with closure schemas only");
  AtomSet uni = universe.unite(b.base_atoms());
  std::vector<Atom> atoms(uni.begin(), uni.end());
  std::size_t n = atoms.size();
  if (n > 7) throw Error("naive oracle universe limited to 7 atoms");
  std::size_t side = 1ull << n;
  std::size_t total = side * side;

  auto bit_of = [&](const Atom& a) {
    for (std::size_t i = 0; i < n; ++i)
      if (atoms[i] == a) return i;
    throw Error("atom outside naive universe: " + a.name());
  };
  auto encode = [&](const AtomicSequent& s) {
    std::size_t l = 0, r = 0;
    for (const Atom& a : s.left) l |= 1ull << bit_of(a);
    for (const Atom& a : s.right) r |= 1ull << bit_of(a);
    return l * side + r;
  };
  auto left_of = [&](std::size_t code) { return code / side; };
  auto right_of = [&](std::size_t code) { return code % side; };

  std::vector<char> der(total, 0);
  bool changed = true;
  auto add = [&](std::size_t code) {
    if (!der[code]) {
      der[code] = 1;
      changed = true;
    }
  };

  bool has_acut = b.closure() == Closure::ST;

  // Seeds: atomic axioms and the identity axioms.
  for (const GroundRule& g : b.ground())
    if (g.axiom()) add(encode(g.conclusion));
  for (std::size_t i = 0; i < n; ++i)
    add(((1ull << i)) * side + (1ull << i));

  while (changed) {
    changed = false;
    // Weakening: supersets of derivable sequents are derivable.
    for (std::size_t c = 0; c < total; ++c) {
      if (der[c]) continue;
      for (std::size_t d = 0; d < total && !der[c]; ++d)
        if (der[d] && (left_of(d) & ~left_of(c)) == 0 && (right_of(d) & ~right_of(c)) == 0)
          add(c);
    }
    // Rules fire on every decomposable derivable premise tuple; the minimal
    // conclusion suffices because weakening closure supplies the rest.
    std::vector<std::size_t> derived;
    for (std::size_t c = 0; c < total; ++c)
      if (der[c]) derived.push_back(c);
    for (const GroundRule& g : b.ground()) {
      if (g.axiom()) continue;
      std::vector<std::size_t> pick(g.premises.size());
      std::vector<std::size_t> prem_codes;
      for (const AtomicSequent& p : g.premises) prem_codes.push_back(encode(p));
      std::size_t concl = encode(g.conclusion);
      auto rec = [&](auto&& self, std::size_t k, std::size_t l, std::size_t r) -> void {
        if (k == pick.size()) {
          add(l * side + r);
          return;
        }
        for (std::size_t code : derived) {
          std::size_t pl = left_of(prem_codes[k]), pr = right_of(prem_codes[k]);
          if ((pl & ~left_of(code)) || (pr & ~right_of(code))) continue;  // not decomposable
          self(self, k + 1, l | (left_of(code) & ~pl), r | (right_of(code) & ~pr));
        }
      };
      rec(rec, 0, left_of(concl), right_of(concl));
    }
    if (has_acut) {
      for (std::size_t c1 : derived)
        for (std::size_t c2 : derived) {
          std::size_t common = right_of(c1) & left_of(c2);
          for (std::size_t i = 0; i < n; ++i)
            if (common & (1ull << i)) {
              std::size_t pb = 1ull << i;
              add((left_of(c1) | (left_of(c2) & ~pb)) * side +
                  ((right_of(c1) & ~pb) | right_of(c2)));
            }
        }
    }
  }

  std::set<AtomicSequent> out;
  for (std::size_t c = 0; c < total; ++c) {
    if (!der[c]) continue;
    AtomicSequent s;
    for (std::size_t i = 0; i < n; ++i) {
      if (left_of(c) & (1ull << i)) s.left.insert(atoms[i]);
      if (right_of(c) & (1ull << i)) s.right.insert(atoms[i]);
    }
    out.insert(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 1: prove vs truth tables

SuiteResult criterion1_oracle_equivalence(std::uint64_t seed, std::size_t random_samples) {
  Timer t;
  std::size_t disagreements = 0, bad_witness = 0, checked = 0;
  std::string first_bad;

  auto examine = [&](const Sequent& s) {
    checked++;
    Decision d = prove(s);
    bool tt = truth_table_valid(s);
    if (d.provable() != tt) {
      disagreements++;
      if (first_bad.empty()) first_bad = s.text();
      return;
    }
    if (d.provable()) {
      if (!check_proof(*d.proof, false).ok || !(d.proof->conclusion == s)) {
        bad_witness++;
        if (first_bad.empty()) first_bad = s.text();
      }
    } else if (!falsified_by(s, *d.refutation)) {
      bad_witness++;
      if (first_bad.empty()) first_bad = s.text();
    }
  };

  // Exhaustive part: sides of at most two formulas over {p, q, bot}, total
  // sequent degree at most 2.
  std::vector<Formula> forms = enumerate_formulas(named_atoms({"p", "q"}), 2, true);
  std::vector<FormulaSet> sides;
  sides.push_back({});
  for (std::size_t i = 0; i < forms.size(); ++i) {
    sides.push_back({forms[i]});
    for (std::size_t j = i + 1; j < forms.size(); ++j)
      if (forms[i].degree() + forms[j].degree() <= 2) sides.push_back({forms[i], forms[j]});
  }
  for (const FormulaSet& l : sides)
    for (const FormulaSet& r : sides) {
      if (degree(l) + degree(r) > 2) continue;
      examine({l, r});
    }

  std::size_t exhaustive = checked;
  Rng g(seed ^ 0xC1);
  std::vector<Atom> atoms = named_atoms({"p", "q", "r", "s"});
  for (std::size_t i = 0; i < random_samples; ++i) examine(random_sequent(g, atoms, 5, 2, true));

  SuiteResult res;
  res.name = "criterion 1: prove agrees with the truth-table oracle";
  res.seconds = t.elapsed();
  res.pass = disagreements == 0 && bad_witness == 0 && res.seconds < 120.0;
  res.detail = std::to_string(exhaustive) + " exhaustive + " +
               std::to_string(checked - exhaustive) + " random sequents, " +
               std::to_string(disagreements) + " disagreements, " + std::to_string(bad_witness) +
               " bad witnesses" + (first_bad.empty() ? "" : ", first bad: " + first_bad);
  return res;
}

// ---------------------------------------------------------------------------
// Criteria 2 and 3: extraction pipelines

namespace {

std::vector<Sequent> pipeline_corpus(std::uint64_t seed, std::size_t size) {
  // Handcrafted members pin down every Q* kind; the rest is seeded random.
  std::vector<Sequent> corpus;
  std::set<std::string> seen;
  auto push = [&](const Sequent& s) {
    if (seen.insert(s.text()).second) corpus.push_back(s);
  };
  for (const char* text : {
           "q & r => q",
           "q & r => r",
           "p | q => q, p",
           "p, p -> q => q",
           "bot => q",
           "=> p -> p",
           "p & q => q & p",
           "=> ((p -> q) -> p) -> p",
           "p -> q, q -> r => p -> r",
           "=> (p -> q) | (q -> p)",
           "p & (q | r) => (p & q) | (p & r)",
           "=> ~(p & ~p)",
           "p -> bot, p => q",
       })
    push(parse_sequent(text));

  Rng g(seed ^ 0xC2);
  std::vector<Atom> atoms = named_atoms({"p", "q", "r", "s"});
  while (corpus.size() < size) {
    Sequent s = random_sequent(g, atoms, 4, 2, true);
    if (truth_table_valid(s)) push(s);
  }
  return corpus;
}

SuiteResult pipeline_criterion(std::uint64_t seed, std::size_t corpus_size, SimulationVariant v) {
  Timer t;
  std::vector<Sequent> corpus = pipeline_corpus(seed, corpus_size);
  std::size_t failures = 0;
  std::string first_bad;
  std::set<Rule> q_seen;
  for (const Sequent& s : corpus) {
    try {
      ExtractionReport rep = extract_proof(s.left, s.right, v);
      bool ok = check_proof(rep.final_proof, false).ok && rep.final_proof.conclusion == s &&
                !contains_rule(rep.final_proof, Rule::Cut);
      if (v == SimulationVariant::Full) {
        ok = ok && check_proof(rep.stage_pi_dprime, true).ok;
      } else {
        for (Rule r : {Rule::QAnd1, Rule::QAnd2, Rule::QOr, Rule::QImp, Rule::QBot})
          if (contains_rule(rep.stage_pi_dprime, r)) q_seen.insert(r);
        ok = ok && rep.stage_q_rewritten && check_proof(*rep.stage_q_rewritten, true).ok;
      }
      if (!ok) {
        failures++;
        if (first_bad.empty()) first_bad = s.text();
      }
    } catch (const std::exception& e) {
      failures++;
      if (first_bad.empty()) first_bad = s.text() + " (" + e.what() + ")";
    }
  }

  SuiteResult res;
  res.seconds = t.elapsed();
  if (v == SimulationVariant::Full) {
    res.name = "criterion 2: completeness pipeline extracts cut-free proofs";
    res.pass = failures == 0 && res.seconds < 300.0;
    res.detail = std::to_string(corpus.size()) + " valid sequents, " + std::to_string(failures) +
                 " failures" + (first_bad.empty() ? "" : ", first bad: " + first_bad);
  } else {
    res.name = "criterion 3: cut-free pipeline extracts proofs and covers every Q* kind";
    res.pass = failures == 0 && q_seen.size() == 5;
    res.detail = std::to_string(corpus.size()) + " valid sequents, " + std::to_string(failures) +
                 " failures, " + std::to_string(q_seen.size()) + "/5 Q* kinds exercised" +
                 (first_bad.empty() ? "" : ", first bad: " + first_bad);
  }
  return res;
}

}  // namespace

SuiteResult criterion2_completeness_pipeline(std::uint64_t seed, std::size_t corpus_size) {
  return pipeline_criterion(seed, corpus_size, SimulationVariant::Full);
}

SuiteResult criterion3_cutfree_pipeline(std::uint64_t seed, std::size_t corpus_size) {
  return pipeline_criterion(seed, corpus_size, SimulationVariant::Quasi);
}

// ---------------------------------------------------------------------------
// Criterion 4: the counterexample report

SuiteResult criterion4_prop6() {
  Timer t;
  Prop6Report rep = prop6_counterexample();
  SuiteResult res;
  res.name = "criterion 4: cut-contrast counterexample facts are exact";
  res.seconds = t.elapsed();
  res.pass = rep.ok && rep.facts.size() == 6 && res.seconds < 1.0;
  res.detail = std::to_string(rep.facts.size()) + " facts, " +
               (rep.ok ? "all exact" : "MISMATCH: " + rep.text());
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 5: connective shadows

namespace {

// Checks the four connective biconditionals on one saturated base.
std::size_t shadow_violations(const DerivableSet& ds, const AtomicMapping& m,
                              const std::vector<AtomSet>& contexts) {
  std::size_t bad = 0;
  for (const Formula& f : m.scope) {
    if (f.is_atom()) continue;
    Atom x = m.map(f);
    for (const AtomSet& theta : contexts) {
      bool lhs = ds.derives({{}, theta.with(x)});
      bool rhs = false;
      switch (f.kind()) {
        case Conn::And:
          rhs = ds.derives({{}, theta.with(m.map(f.left()))}) &&
                ds.derives({{}, theta.with(m.map(f.right()))});
          break;
        case Conn::Or:
          rhs = ds.derives({{}, theta.with(m.map(f.left())).with(m.map(f.right()))});
          break;
        case Conn::Imp:
          rhs = ds.derives({{m.map(f.left())}, theta.with(m.map(f.right()))});
          break;
        case Conn::Bottom:
          rhs = ds.derives({{}, theta});
          break;
        default: break;
      }
      if (lhs != rhs) bad++;
    }
  }
  return bad;
}

}  // namespace

SuiteResult criterion5_mainlemma_shadows(std::uint64_t seed, std::size_t samples) {
  Timer t;
  Rng g(seed ^ 0xC5);
  std::vector<Atom> atoms = named_atoms({"p", "q", "r"});
  std::vector<Atom> context_atoms = named_atoms({"c1", "c2", "c3"});
  std::size_t violations = 0, cases = 0;
  std::string first_bad;

  for (std::size_t i = 0; i < samples; ++i) {
    FormulaSet sigma;
    std::size_t nf = 1 + g.below(2);
    for (std::size_t k = 0; k < nf; ++k) sigma.insert(random_formula(g, atoms, 3, true));
    if (subformula_closure(sigma).size() > 6) {
      sigma = FormulaSet{*sigma.begin()};
      if (subformula_closure(sigma).size() > 6) continue;
    }
    AtomicMapping m = atomic_mapping(sigma);

    AtomSet universe = m.map_set(m.scope);
    for (const Atom& c : context_atoms) universe.insert(c);
    std::vector<Atom> uni_vec(universe.begin(), universe.end());

    std::vector<AtomSet> contexts{{}};
    for (int k = 0; k < 3; ++k) {
      AtomSet theta;
      for (const Atom& c : context_atoms)
        if (g.coin()) theta.insert(c);
      contexts.push_back(theta);
    }

    for (SimulationVariant v : {SimulationVariant::Full, SimulationVariant::Quasi}) {
      Base base = simulation_base(sigma, m, v);
      std::vector<GroundRule> extra;
      std::size_t n_ax = g.below(4);  // up to 3 added atomic axioms
      for (std::size_t k = 0; k < n_ax; ++k) {
        AtomicSequent ax;
        std::size_t picks = 1 + g.below(2);
        for (std::size_t j = 0; j < picks; ++j) ax.right.insert(uni_vec[g.below(uni_vec.size())]);
        if (g.coin() && !uni_vec.empty()) ax.left.insert(uni_vec[g.below(uni_vec.size())]);
        extra.push_back({{}, ax, ""});
      }
      Base ext = base.extend(extra);
      DerivableSet ds = saturate(ext, universe);
      std::size_t bad = shadow_violations(ds, m, contexts);
      cases++;
      if (bad) {
        violations += bad;
        if (first_bad.empty())
          first_bad = std::string(v == SimulationVariant::Full ? "full" : "quasi") +
                      " base over sigma {" + (*sigma.begin()).text() + ", ...}";
      }
    }
  }

  // The must-fail side: the counterexample base violates the conjunction
  // shadow.
  FormulaSet sigma{parse_formula("q & r"), parse_formula("q")};
  AtomicMapping m = atomic_mapping(sigma);
  Base hs = simulation_base_flavored(sigma, m, SimFlavor::FullHS)
                .extend({{{}, {{}, {m.map(parse_formula("q & r"))}}, "prop6ax"}});
  DerivableSet ds = saturate(hs, m.map_set(m.scope));
  bool must_fail_ok = shadow_violations(ds, m, {{}}) > 0;

  SuiteResult res;
  res.name = "criterion 5: connective shadows hold on full-ST and quasi bases";
  res.seconds = t.elapsed();
  res.pass = violations == 0 && must_fail_ok;
  res.detail = std::to_string(cases) + " sampled bases, " + std::to_string(violations) +
               " violations" + (first_bad.empty() ? "" : " (" + first_bad + ")") +
               ", cut-free must-fail " + (must_fail_ok ? "fails as predicted" : "DID NOT FAIL");
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 6: the axiom-addition witness

SuiteResult criterion6_categorical_witness(std::uint64_t seed, std::size_t samples) {
  Timer t;
  Rng g(seed ^ 0xC6);
  std::vector<Atom> atoms = named_atoms({"p", "q", "r", "s", "t"});
  std::size_t deviations = 0, st_checked = 0, neg_checked = 0;
  std::string first_bad;

  for (std::size_t i = 0; i < samples; ++i) {
    Closure c = g.coin() ? Closure::ST : Closure::HS;
    Base b = random_base(g, atoms, 6, c);
    AtomicSequent q = random_atomic_sequent(g, atoms);
    AtomSet uni = b.base_atoms().unite(q.left).unite(q.right);
    for (const Atom& a : atoms) uni.insert(a);

    std::vector<GroundRule> axs;
    int k = 0;
    for (const Atom& a : q.left) axs.push_back({{}, {{}, {a}}, "w" + std::to_string(++k)});
    Base d = b.extend(axs);

    bool base_derives = saturate(b, uni).derives(q);
    bool witness_derives = saturate(d, uni).derives({{}, q.right});
    if (!base_derives) {
      neg_checked++;
      if (witness_derives) {
        deviations++;
        if (first_bad.empty()) first_bad = q.text();
      }
    } else if (c == Closure::ST) {
      st_checked++;
      if (!witness_derives) {
        deviations++;
        if (first_bad.empty()) first_bad = q.text();
      }
    }
  }

  SuiteResult res;
  res.name = "criterion 6: axiom-addition witness tracks hypothetical derivability";
  res.seconds = t.elapsed();
  res.pass = deviations == 0;
  res.detail = std::to_string(samples) + " bases (" + std::to_string(neg_checked) +
               " negative, " + std::to_string(st_checked) + " cut-closed positive), " +
               std::to_string(deviations) + " deviations" +
               (first_bad.empty() ? "" : ", first bad: " + first_bad);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 7: monotonicity under extension

SuiteResult criterion7_monotonicity(std::uint64_t seed, std::size_t samples) {
  Timer t;
  Rng g(seed ^ 0xC7);
  std::vector<Atom> atoms = named_atoms({"p", "q", "r", "s"});
  std::size_t deviations = 0;
  std::string first_bad;

  for (std::size_t i = 0; i < samples; ++i) {
    Closure c = g.coin() ? Closure::ST : Closure::HS;
    Base b = random_base(g, atoms, 4, c);
    Base e = b.extend(random_base(g, atoms, 3, c).ground());
    AtomSet uni;
    for (const Atom& a : atoms) uni.insert(a);
    uni = uni.unite(b.base_atoms()).unite(e.base_atoms());
    DerivableSet db = saturate(b, uni);
    DerivableSet de = saturate(e, uni);
    for (const AtomicSequent& m : db.minimal())
      if (!de.derives(m)) {
        deviations++;
        if (first_bad.empty()) first_bad = m.text();
        break;
      }
  }

  SuiteResult res;
  res.name = "criterion 7: derivability is monotone under base extension";
  res.seconds = t.elapsed();
  res.pass = deviations == 0;
  res.detail = std::to_string(samples) + " base/extension pairs, " + std::to_string(deviations) +
               " deviations" + (first_bad.empty() ? "" : ", first bad: " + first_bad);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 8: engine vs naive enumerator

SuiteResult criterion8_saturation_vs_bruteforce() {
  Timer t;
  std::vector<Atom> atoms = named_atoms({"p", "q", "r"});
  Atom p = atoms[0], q = atoms[1], r = atoms[2];

  // Bounded rule grammar: a fixed pool of axioms, one-premise and two-premise
  // rules over three atoms; bases are all subsets of size at most 3 under
  // both closures.
  std::vector<GroundRule> pool = {
      {{}, {{}, {p}}, "a1"},
      {{}, {{}, {q}}, "a2"},
      {{}, {{}, {p, q}}, "a3"},
      {{}, {{p}, {q}}, "a4"},
      {{}, {{q}, {r}}, "a5"},
      {{}, {{p, q}, {r}}, "a6"},
      {{}, {{r}, {p}}, "a7"},
      {{}, {{}, {r}}, "a8"},
      {{{{{p}, {q}}}}, {{q}, {r}}, "u1"},
      {{{{{}, {p}}}}, {{}, {q}}, "u2"},
      {{{{{q}, {r}}}}, {{p}, {r}}, "u3"},
      {{{{{}, {q}}}}, {{r}, {p}}, "u4"},
      {{{{{}, {p}}, {{}, {q}}}}, {{}, {r}}, "b1"},
      {{{{{p}, {q}}, {{q}, {r}}}}, {{p}, {r}}, "b2"},
  };

  AtomSet uni{p, q, r};
  std::size_t disagreements = 0, bases = 0, queries = 0;
  std::string first_bad;

  std::vector<std::size_t> idx;
  auto run_base = [&](const std::vector<std::size_t>& pick) {
    for (Closure c : {Closure::HS, Closure::ST}) {
      std::vector<GroundRule> rules;
      for (std::size_t i : pick) rules.push_back(pool[i]);
      Base b = Base::make(rules, c);
      bases++;
      DerivableSet ds = saturate(b, uni);
      std::set<AtomicSequent> naive = naive_derivable_set(b, uni);
      // exhaustive agreement over every sequent of the universe
      std::vector<AtomSet> subsets;
      for (std::size_t mask = 0; mask < 8; ++mask) {
        AtomSet s;
        for (std::size_t i = 0; i < 3; ++i)
          if (mask & (1ull << i)) s.insert(atoms[i]);
        subsets.push_back(s);
      }
      for (const AtomSet& l : subsets)
        for (const AtomSet& rset : subsets) {
          AtomicSequent s{l, rset};
          queries++;
          if (ds.derives(s) != (naive.count(s) > 0)) {
            disagreements++;
            if (first_bad.empty()) first_bad = s.text() + " in\n" + b.text();
          }
        }
    }
  };

  auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
    run_base(idx);
    if (remaining == 0) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1, remaining - 1);
      idx.pop_back();
    }
  };
  rec(rec, 0, 3);

  SuiteResult res;
  res.name = "criterion 8: antichain engine agrees with the naive enumerator";
  res.seconds = t.elapsed();
  res.pass = disagreements == 0 && res.seconds < 120.0;
  res.detail = std::to_string(bases) + " bases x 64 queries (" + std::to_string(queries) +
               " total), " + std::to_string(disagreements) + " disagreements" +
               (first_bad.empty() ? "" : ", first bad: " + first_bad);
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 9: cut divergence

SuiteResult criterion9_cut_divergence() {
  Timer t;
  Atom p = Atom::user("p"), q = Atom::user("q"), r = Atom::user("r");
  std::vector<GroundRule> axioms = {{{}, {{p}, {q}}, "a1"}, {{}, {{q}, {r}}, "a2"}};
  AtomicSequent goal{{p}, {r}};
  AtomSet uni{p, q, r};

  bool st = saturate(Base::make(axioms, Closure::ST), uni).derives(goal);
  bool hs = saturate(Base::make(axioms, Closure::HS), uni).derives(goal);

  SuiteResult res;
  res.name = "criterion 9: atomic cut changes the derivable set";
  res.seconds = t.elapsed();
  res.pass = st && !hs;
  res.detail = std::string("p => r is ") + (st ? "derivable" : "NOT derivable") +
               " under st and " + (hs ? "derivable" : "not derivable") + " under hs";
  return res;
}

// ---------------------------------------------------------------------------

std::vector<SuiteResult> run_acceptance(std::uint64_t seed, double scale) {
  auto scaled = [&](std::size_t n) {
    double v = std::ceil(static_cast<double>(n) * scale);
    return static_cast<std::size_t>(v < 1 ? 1 : v);
  };
  std::vector<SuiteResult> out;
  out.push_back(criterion1_oracle_equivalence(seed, scaled(10000)));
  out.push_back(criterion2_completeness_pipeline(seed, scaled(500)));
  out.push_back(criterion3_cutfree_pipeline(seed, scaled(500)));
  out.push_back(criterion4_prop6());
  out.push_back(criterion5_mainlemma_shadows(seed, scaled(1000)));
  out.push_back(criterion6_categorical_witness(seed, scaled(1000)));
  out.push_back(criterion7_monotonicity(seed, scaled(1000)));
  out.push_back(criterion8_saturation_vs_bruteforce());
  out.push_back(criterion9_cut_divergence());
  return out;
}

}  // namespace bes::checks
