#include "bes/base.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bes {

const char* schema_name(SchemaTag t) {
  switch (t) {
    case SchemaTag::Ainit: return "Ainit";
    case SchemaTag::Acut: return "Acut";
    case SchemaTag::SimLAnd: return "L&";
    case SchemaTag::SimRAnd: return "R&";
    case SchemaTag::SimLOr: return "L|";
    case SchemaTag::SimROr: return "R|";
    case SchemaTag::SimLImp: return "L->";
    case SchemaTag::SimRImp: return "R->";
    case SchemaTag::SimLBot: return "Lbot";
    case SchemaTag::SimRBot: return "Rbot";
    case SchemaTag::QAnd1: return "Q&1";
    case SchemaTag::QAnd2: return "Q&2";
    case SchemaTag::QOr: return "Q|";
    case SchemaTag::QImp: return "Q->";
    case SchemaTag::QBot: return "Qbot";
  }
  return "?";
}

std::vector<AtomicSequent> SchemaRule::premise_fixed() const {
  const std::vector<Atom>& f = fixed;
  switch (tag) {
    case SchemaTag::SimLAnd: return {{{f[1], f[2]}, {}}};
    case SchemaTag::SimRAnd: return {{{}, {f[1]}}, {{}, {f[2]}}};
    case SchemaTag::SimLOr: return {{{f[1]}, {}}, {{f[2]}, {}}};
    case SchemaTag::SimROr: return {{{}, {f[1], f[2]}}};
    case SchemaTag::SimLImp: return {{{}, {f[1]}}, {{f[2]}, {}}};
    case SchemaTag::SimRImp: return {{{f[1]}, {f[2]}}};
    case SchemaTag::SimRBot: return {{{}, {}}};
    case SchemaTag::QAnd1: return {{{}, {f[0]}}};
    case SchemaTag::QAnd2: return {{{}, {f[0]}}};
    case SchemaTag::QOr: return {{{}, {f[0]}}};
    case SchemaTag::QImp: return {{{}, {f[0]}}, {{}, {f[1]}}};
    case SchemaTag::QBot: return {{{}, {f[0]}}};
    default: return {};
  }
}

AtomicSequent SchemaRule::conclusion_fixed() const {
  const std::vector<Atom>& f = fixed;
  switch (tag) {
    case SchemaTag::SimLAnd: return {{f[0]}, {}};
    case SchemaTag::SimRAnd: return {{}, {f[0]}};
    case SchemaTag::SimLOr: return {{f[0]}, {}};
    case SchemaTag::SimROr: return {{}, {f[0]}};
    case SchemaTag::SimLImp: return {{f[0]}, {}};
    case SchemaTag::SimRImp: return {{}, {f[0]}};
    case SchemaTag::SimLBot: return {{f[0]}, {}};
    case SchemaTag::SimRBot: return {{}, {f[0]}};
    case SchemaTag::QAnd1: return {{}, {f[1]}};
    case SchemaTag::QAnd2: return {{}, {f[1]}};
    case SchemaTag::QOr: return {{}, {f[1], f[2]}};
    case SchemaTag::QImp: return {{}, {f[2]}};
    case SchemaTag::QBot: return {{}, {}};
    default: return {};
  }
}

// ---------------------------------------------------------------------------
// Base

Base Base::make(std::vector<GroundRule> ground, Closure closure) {
  Base b;
  b.closure_ = closure;
  b.schemas_.push_back({SchemaTag::Ainit, {}});
  if (closure == Closure::ST) b.schemas_.push_back({SchemaTag::Acut, {}});
  b.ground_ = std::move(ground);
  for (std::size_t i = 0; i < b.ground_.size(); ++i)
    if (b.ground_[i].id.empty()) b.ground_[i].id = "r" + std::to_string(i + 1);
  return b;
}

Base Base::extend(std::vector<GroundRule> rules) const {
  Base child = *this;
  child.parent_ = std::make_shared<Base>(*this);
  for (GroundRule& g : rules) {
    if (g.id.empty()) g.id = "r" + std::to_string(child.ground_.size() + 1);
    child.ground_.push_back(std::move(g));
  }
  return child;
}

Base Base::with_schemas(std::vector<SchemaRule> extra) const {
  Base child = *this;
  for (SchemaRule& s : extra)
    if (!child.has_schema(s)) child.schemas_.push_back(std::move(s));
  return child;
}

Base Base::with_sim(std::shared_ptr<const SimInfo> info) const {
  Base child = *this;
  child.sim_ = std::move(info);
  return child;
}

const GroundRule* Base::find_rule(std::string_view id) const {
  for (const GroundRule& g : ground_)
    if (g.id == id) return &g;
  return nullptr;
}

bool Base::has_schema(const SchemaRule& s) const {
  for (const SchemaRule& x : schemas_)
    if (x == s) return true;
  return false;
}

AtomSet Base::base_atoms() const {
  AtomSet out;
  auto add_seq = [&out](const AtomicSequent& s) {
    for (const Atom& a : s.left) out.insert(a);
    for (const Atom& a : s.right) out.insert(a);
  };
  for (const GroundRule& g : ground_) {
    for (const AtomicSequent& p : g.premises) add_seq(p);
    add_seq(g.conclusion);
  }
  for (const SchemaRule& s : schemas_)
    for (const Atom& a : s.fixed) out.insert(a);
  return out;
}

std::string Base::text() const {
  std::string out = closure_ == Closure::ST ? "closure: st\n" : "closure: hs\n";
  for (const SchemaRule& s : schemas_) {
    if (s.tag == SchemaTag::Ainit || s.tag == SchemaTag::Acut) continue;
    out += "# schema ";
    out += schema_name(s.tag);
    for (const Atom& a : s.fixed) out += " " + a.name();
    out += "\n";
  }
  for (const GroundRule& g : ground_) {
    std::string line;
    for (std::size_t i = 0; i < g.premises.size(); ++i) {
      if (i) line += " ; ";
      line += g.premises[i].text();
    }
    if (!g.premises.empty()) line += " ";
    line += "|- " + g.conclusion.text();
    out += line + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturation engine over bitmask sequents

namespace {

struct Mask {
  std::uint64_t l = 0, r = 0;
  friend auto operator<=>(const Mask&, const Mask&) = default;
};

bool mask_subsumes(Mask a, Mask b) { return (a.l & ~b.l) == 0 && (a.r & ~b.r) == 0; }

struct ProvEntry {
  Justification::Kind kind = Justification::Kind::Ainit;
  std::string rule_id;
  std::optional<SchemaRule> schema;
  std::optional<Atom> param;
  std::vector<Mask> supports;
  std::vector<Mask> prem_fixed;
  Mask concl_fixed;
};

struct Cand {
  Mask m;
  ProvEntry p;
};

// Rule with fixed premise/conclusion parts; canonical firing takes minimal
// sequents, weakens the fixed atoms in as needed, and carries the leftovers
// into the conclusion. Every legal Mix firing is subsumed by a canonical one.
struct FireRule {
  std::vector<Mask> prem;
  Mask concl;
  ProvEntry stamp;  // supports filled per firing
};

class Engine {
 public:
  Engine(const Base& b, const AtomSet& extra) {
    AtomSet uni = b.base_atoms().unite(extra);
    if (uni.size() > 64) throw Error("saturation universe limited to 64 atoms");
    atoms_.assign(uni.begin(), uni.end());
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);

    for (const GroundRule& g : b.ground()) {
      if (g.axiom()) {
        Mask concl = to_mask(g.conclusion);
        seeds_.push_back({concl,
                          {Justification::Kind::GroundAxiom, g.id, std::nullopt, std::nullopt,
                           {}, {}, concl}});
      } else {
        FireRule fr;
        for (const AtomicSequent& p : g.premises) fr.prem.push_back(to_mask(p));
        fr.concl = to_mask(g.conclusion);
        fr.stamp = {Justification::Kind::GroundRule, g.id, std::nullopt, std::nullopt,
                    {},                               fr.prem,
                    fr.concl};
        rules_.push_back(std::move(fr));
      }
    }
    for (const SchemaRule& s : b.schemas()) {
      switch (s.tag) {
        case SchemaTag::Ainit:
          for (std::size_t i = 0; i < atoms_.size(); ++i) {
            Mask concl{bit(i), bit(i)};
            seeds_.push_back({concl,
                              {Justification::Kind::Ainit, "", std::nullopt, atoms_[i], {}, {},
                               concl}});
          }
          break;
        case SchemaTag::Acut:
          has_acut_ = true;
          break;
        case SchemaTag::SimLBot: {
          Mask concl = to_mask(s.conclusion_fixed());
          seeds_.push_back(
              {concl, {Justification::Kind::SchemaAxiom, "", s, std::nullopt, {}, {}, concl}});
          break;
        }
        default: {
          FireRule fr;
          for (const AtomicSequent& p : s.premise_fixed()) fr.prem.push_back(to_mask(p));
          fr.concl = to_mask(s.conclusion_fixed());
          fr.stamp = {Justification::Kind::Schema, "", s, std::nullopt, {}, fr.prem, fr.concl};
          rules_.push_back(std::move(fr));
        }
      }
    }
  }

  void run() {
    process(seeds_);
    while (!delta_.empty()) {
      std::vector<Cand> cands;
      for (const FireRule& fr : rules_) {
        std::vector<std::size_t> idx(fr.prem.size());
        fire_tuples(fr, 0, false, idx, cands);
      }
      if (has_acut_) fire_cuts(cands);
      process(cands);
    }
  }

  void finish(AtomSet& universe, std::vector<AtomicSequent>& minimal,
              std::map<AtomicSequent, Justification>& prov) const {
    for (const Atom& a : atoms_) universe.insert(a);
    for (Mask m : chain_) minimal.push_back(from_mask(m));
    std::sort(minimal.begin(), minimal.end());
    for (const auto& [m, p] : prov_) {
      Justification j;
      j.kind = p.kind;
      j.rule_id = p.rule_id;
      j.schema = p.schema;
      j.param = p.param;
      for (Mask s : p.supports) j.supports.push_back(from_mask(s));
      for (Mask s : p.prem_fixed) j.premise_templates.push_back(from_mask(s));
      j.conclusion_template = from_mask(p.concl_fixed);
      prov.emplace(from_mask(m), std::move(j));
    }
  }

 private:
  std::uint64_t bit(std::size_t i) const { return 1ull << i; }

  Mask to_mask(const AtomicSequent& s) const {
    Mask m;
    for (const Atom& a : s.left) m.l |= bit(index_.at(a));
    for (const Atom& a : s.right) m.r |= bit(index_.at(a));
    return m;
  }

  AtomicSequent from_mask(Mask m) const {
    AtomicSequent s;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (m.l & bit(i)) s.left.insert(atoms_[i]);
      if (m.r & bit(i)) s.right.insert(atoms_[i]);
    }
    return s;
  }

  // Fires fr on every tuple of current minimals with at least one member from
  // the last round's delta.
  void fire_tuples(const FireRule& fr, std::size_t k, bool has_delta,
                   std::vector<std::size_t>& idx, std::vector<Cand>& out) {
    if (k == fr.prem.size()) {
      if (!has_delta) return;
      Cand c;
      c.m = fr.concl;
      c.p = fr.stamp;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        Mask pm = chain_[idx[j]];
        c.m.l |= pm.l & ~fr.prem[j].l;
        c.m.r |= pm.r & ~fr.prem[j].r;
        c.p.supports.push_back(pm);
      }
      out.push_back(std::move(c));
      return;
    }
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      idx[k] = i;
      fire_tuples(fr, k + 1, has_delta || delta_.count(chain_[i]) > 0, idx, out);
    }
  }

  void fire_cuts(std::vector<Cand>& out) {
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      bool di = delta_.count(chain_[i]) > 0;
      for (std::size_t j = 0; j < chain_.size(); ++j) {
        if (!di && delta_.count(chain_[j]) == 0) continue;
        std::uint64_t common = chain_[i].r & chain_[j].l;
        while (common) {
          std::uint64_t pb = common & (~common + 1);
          common ^= pb;
          Cand c;
          c.m.l = chain_[i].l | (chain_[j].l & ~pb);
          c.m.r = (chain_[i].r & ~pb) | chain_[j].r;
          std::size_t pi = static_cast<std::size_t>(std::countr_zero(pb));
          c.p = {Justification::Kind::Acut,
                 "",
                 std::nullopt,
                 atoms_[pi],
                 {chain_[i], chain_[j]},
                 {Mask{0, pb}, Mask{pb, 0}},
                 Mask{}};
          out.push_back(std::move(c));
        }
      }
    }
  }

  void process(std::vector<Cand>& cands) {
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.m < b.m; });
    std::set<Mask> next;
    for (Cand& c : cands) insert(std::move(c), next);
    delta_ = std::move(next);
  }

  void insert(Cand c, std::set<Mask>& next) {
    for (Mask x : chain_)
      if (mask_subsumes(x, c.m)) return;
    prov_.emplace(c.m, std::move(c.p));  // first justification wins
    std::erase_if(chain_, [&](Mask x) { return mask_subsumes(c.m, x); });
    chain_.insert(std::lower_bound(chain_.begin(), chain_.end(), c.m), c.m);
    next.insert(c.m);
  }

  std::vector<Atom> atoms_;
  std::map<Atom, std::size_t> index_;
  std::vector<FireRule> rules_;
  std::vector<Cand> seeds_;
  bool has_acut_ = false;
  std::vector<Mask> chain_;  // sorted antichain
  std::set<Mask> delta_;
  std::map<Mask, ProvEntry> prov_;
};

}  // namespace

DerivableSet saturate(const Base& b, const AtomSet& extra_atoms) {
  Engine e(b, extra_atoms);
  e.run();
  DerivableSet out;
  e.finish(out.universe_, out.minimal_, out.prov_);
  return out;
}

bool DerivableSet::derives(const AtomicSequent& q) const {
  for (const Atom& a : q.left)
    if (q.right.contains(a)) return true;  // Ainit, valid for any atoms
  for (const AtomicSequent& m : minimal_)
    if (m.subsumes(q)) return true;
  return false;
}

std::optional<AtomicSequent> DerivableSet::subsumer(const AtomicSequent& q) const {
  for (const AtomicSequent& m : minimal_)
    if (m.subsumes(q)) return m;
  return std::nullopt;
}

bool derivable(const Base& b, const AtomicSequent& s) {
  return saturate(b, s.left.unite(s.right)).derives(s);
}

// ---------------------------------------------------------------------------
// Derivation reconstruction and checking

namespace {

// Builds the node deriving exactly `target` from the provenance of the
// minimal sequent `m` (with m subsuming target). Axiom-style leaves absorb the
// weakening; for rule firings the missing atoms ride along in the first
// premise and the fixed template atoms are weakened into every premise, so
// each child derives an actual instance sequent.
AtomicDerivation build_node(const DerivableSet& ds, const AtomicSequent& m,
                            const AtomicSequent& target) {
  auto it = ds.provenance().find(m);
  if (it == ds.provenance().end()) throw Error("missing provenance for " + m.text());
  AtomicDerivation node;
  node.sequent = target;
  node.just = it->second;
  const Justification& j = it->second;
  if (!j.supports.empty()) {
    AtomicSequent canonical = j.conclusion_template;
    for (std::size_t i = 0; i < j.supports.size(); ++i) {
      canonical.left = canonical.left.unite(j.supports[i].left.minus(j.premise_templates[i].left));
      canonical.right =
          canonical.right.unite(j.supports[i].right.minus(j.premise_templates[i].right));
    }
    AtomicSequent extra{target.left.minus(canonical.left), target.right.minus(canonical.right)};
    for (std::size_t i = 0; i < j.supports.size(); ++i) {
      AtomicSequent child_target{j.supports[i].left.unite(j.premise_templates[i].left),
                                 j.supports[i].right.unite(j.premise_templates[i].right)};
      if (i == 0) {
        child_target.left = child_target.left.unite(extra.left);
        child_target.right = child_target.right.unite(extra.right);
      }
      node.children.push_back(build_node(ds, j.supports[i], child_target));
    }
    node.just.supports.clear();
    for (const AtomicDerivation& c : node.children) node.just.supports.push_back(c.sequent);
  }
  return node;
}

}  // namespace

Derivation derivation_from(const DerivableSet& ds, const AtomicSequent& s) {
  if (auto m = ds.subsumer(s)) return {build_node(ds, *m, s), s};
  // Ainit instance outside the saturated universe.
  for (const Atom& a : s.left)
    if (s.right.contains(a)) {
      AtomicDerivation node;
      node.sequent = s;
      node.just = {Justification::Kind::Ainit, "", std::nullopt, a, {}, {}, {{a}, {a}}};
      return {std::move(node), s};
    }
  throw Error("not derivable: " + s.text());
}

Derivation derivation(const Base& b, const AtomicSequent& s) {
  return derivation_from(saturate(b, s.left.unite(s.right)), s);
}

std::size_t derivation_size(const AtomicDerivation& d) {
  std::size_t n = 1;
  for (const AtomicDerivation& c : d.children) n += derivation_size(c);
  return n;
}

namespace {

// Def-3 side condition shared by ground-rule and schema nodes: every child
// carries its fixed premise part, and for both sides
//   fixed ∪ ⋃(child ∖ fixed_i)  ⊆  node  ⊆  fixed ∪ ⋃child.
CheckResult atomic_interval_check(const AtomicSequent& concl,
                                  const std::vector<AtomicDerivation>& children,
                                  const std::vector<AtomicSequent>& active,
                                  const AtomicSequent& principal, const std::string& what) {
  auto reject = [&](const std::string& msg) {
    return CheckResult{false, what + ": " + msg};
  };
  if (children.size() != active.size())
    return reject("expected " + std::to_string(active.size()) + " premises, got " +
                  std::to_string(children.size()));
  AtomSet lower_l = principal.left, upper_l = principal.left;
  AtomSet lower_r = principal.right, upper_r = principal.right;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const AtomicSequent& c = children[i].sequent;
    // Canonical firing weakens missing fixed atoms into the premise, so the
    // effective premise is child ∪ fixed; leftovers are child ∖ fixed.
    lower_l = lower_l.unite(c.left.minus(active[i].left));
    upper_l = upper_l.unite(c.left);
    lower_r = lower_r.unite(c.right.minus(active[i].right));
    upper_r = upper_r.unite(c.right);
  }
  if (!lower_l.subset_of(concl.left)) return reject("antecedent misses premise context");
  if (!concl.left.subset_of(upper_l)) return reject("antecedent has atoms from nowhere");
  if (!lower_r.subset_of(concl.right)) return reject("succedent misses premise context");
  if (!concl.right.subset_of(upper_r)) return reject("succedent has atoms from nowhere");
  return {};
}

CheckResult check_node(const Base& b, const AtomicDerivation& d, const std::string& path) {
  auto reject = [&](const std::string& msg) {
    return CheckResult{false, "node " + path + " \"" + d.sequent.text() + "\": " + msg};
  };
  switch (d.just.kind) {
    case Justification::Kind::GroundAxiom: {
      const GroundRule* g = b.find_rule(d.just.rule_id);
      if (!g) return reject("unknown rule id " + d.just.rule_id);
      if (!g->axiom()) return reject("rule " + g->id + " is not an axiom");
      if (!d.children.empty()) return reject("axiom node with children");
      if (!g->conclusion.subsumes(d.sequent))
        return reject("not a weakening of axiom " + g->id);
      return {};
    }
    case Justification::Kind::Ainit: {
      if (!d.just.param) return reject("Ainit node without its atom");
      if (!d.children.empty()) return reject("axiom node with children");
      if (!d.sequent.left.contains(*d.just.param) || !d.sequent.right.contains(*d.just.param))
        return reject("Ainit atom must occur on both sides");
      return {};
    }
    case Justification::Kind::SchemaAxiom: {
      if (!d.just.schema || !d.just.schema->axiom_schema()) return reject("bad schema axiom");
      if (!b.has_schema(*d.just.schema)) return reject("schema not in base");
      if (!d.just.schema->conclusion_fixed().subsumes(d.sequent))
        return reject("not a weakening of the schema axiom");
      return {};
    }
    case Justification::Kind::GroundRule: {
      const GroundRule* g = b.find_rule(d.just.rule_id);
      if (!g) return reject("unknown rule id " + d.just.rule_id);
      if (g->axiom()) return reject("axiom used as a rule");
      CheckResult r = atomic_interval_check(d.sequent, d.children, g->premises, g->conclusion,
                                            "rule " + g->id);
      if (!r.ok) return reject(r.error);
      return {};
    }
    case Justification::Kind::Schema: {
      if (!d.just.schema) return reject("schema node without schema");
      if (!b.has_schema(*d.just.schema)) return reject("schema not in base");
      CheckResult r =
          atomic_interval_check(d.sequent, d.children, d.just.schema->premise_fixed(),
                                d.just.schema->conclusion_fixed(),
                                std::string("schema ") + schema_name(d.just.schema->tag));
      if (!r.ok) return reject(r.error);
      return {};
    }
    case Justification::Kind::Acut: {
      if (!b.has_schema({SchemaTag::Acut, {}})) return reject("base is not cut-closed");
      if (!d.just.param) return reject("Acut node without its cut atom");
      Atom p = *d.just.param;
      std::vector<AtomicSequent> active = {{{}, {p}}, {{p}, {}}};
      CheckResult r = atomic_interval_check(d.sequent, d.children, active, {{}, {}}, "Acut");
      if (!r.ok) return reject(r.error);
      return {};
    }
  }
  return reject("unknown node kind");
}

CheckResult check_rec(const Base& b, const AtomicDerivation& d, const std::string& path) {
  CheckResult r = check_node(b, d, path);
  if (!r.ok) return r;
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    r = check_rec(b, d.children[i], path + "." + std::to_string(i + 1));
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace

CheckResult check_derivation(const Base& b, const Derivation& d) {
  CheckResult r = check_rec(b, d.root, "root");
  if (!r.ok) return r;
  if (!d.root.sequent.subsumes(d.target))
    return {false, "root " + d.root.sequent.text() + " does not subsume target " + d.target.text()};
  return {};
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string just_label(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::GroundAxiom:
    case Justification::Kind::GroundRule: return "rule " + j.rule_id;
    case Justification::Kind::Ainit: return "Ainit";
    case Justification::Kind::Acut: return std::string("Acut(") + j.param->name() + ")";
    case Justification::Kind::SchemaAxiom:
    case Justification::Kind::Schema: {
      std::string out = schema_name(j.schema->tag);
      if (!j.schema->fixed.empty()) out += "(" + j.schema->fixed[0].name() + ")";
      return out;
    }
  }
  return "?";
}

void derivation_text_rec(const AtomicDerivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "[" + just_label(d.just) + "] " + d.sequent.text() + "\n";
  for (const AtomicDerivation& c : d.children) derivation_text_rec(c, depth + 1, out);
}

void derivation_latex_rec(const AtomicDerivation& d, std::string& out) {
  static const char* kInf[] = {"\\UnaryInfC",      "\\UnaryInfC",      "\\BinaryInfC",
                               "\\TrinaryInfC",    "\\QuaternaryInfC", "\\QuinaryInfC"};
  if (d.children.size() + 1 >= sizeof(kInf) / sizeof(kInf[0]))
    throw Error("latex export supports at most 5 premises per rule");
  for (const AtomicDerivation& c : d.children) derivation_latex_rec(c, out);
  if (d.children.empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{\\scriptsize{" + just_label(d.just) + "}}\n";
  out += std::string(kInf[d.children.size()]) + "{$" + latex(d.sequent) + "$}\n";
}

nlohmann::ordered_json derivation_json_rec(const AtomicDerivation& d) {
  nlohmann::ordered_json j;
  j["sequent"] = d.sequent.text();
  switch (d.just.kind) {
    case Justification::Kind::GroundAxiom: j["kind"] = "axiom"; break;
    case Justification::Kind::GroundRule: j["kind"] = "rule"; break;
    case Justification::Kind::Ainit: j["kind"] = "ainit"; break;
    case Justification::Kind::Acut: j["kind"] = "acut"; break;
    case Justification::Kind::SchemaAxiom:
    case Justification::Kind::Schema: j["kind"] = "schema"; break;
  }
  if (!d.just.rule_id.empty()) j["rule"] = d.just.rule_id;
  if (d.just.schema) {
    j["schema"] = schema_name(d.just.schema->tag);
    auto atoms = nlohmann::ordered_json::array();
    for (const Atom& a : d.just.schema->fixed) atoms.push_back(a.name());
    j["atoms"] = atoms;
  }
  if (d.just.param) j["atom"] = d.just.param->name();
  j["children"] = nlohmann::ordered_json::array();
  for (const AtomicDerivation& c : d.children) j["children"].push_back(derivation_json_rec(c));
  return j;
}

}  // namespace

std::string to_text(const Derivation& d) {
  std::string out;
  if (!(d.root.sequent == d.target))
    out += "derives " + d.target.text() + " by weakening from:\n";
  derivation_text_rec(d.root, 0, out);
  return out;
}

std::string to_latex(const Derivation& d) {
  std::string out = "\\begin{prooftree}\n";
  derivation_latex_rec(d.root, out);
  out += "\\end{prooftree}\n";
  return out;
}

std::string derivation_to_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["target"] = d.target.text();
  j["tree"] = derivation_json_rec(d.root);
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Base files

Base parse_base_file(std::string_view text) {
  std::optional<Closure> closure;
  std::vector<GroundRule> rules;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [&](const std::string& msg) -> void {
    throw Error("base file line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    line_no++;
    std::string_view sv = line;
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
    if (sv.empty() || sv.front() == '#') continue;
    if (sv.starts_with("closure:")) {
      std::string_view val = sv.substr(8);
      while (!val.empty() && std::isspace(static_cast<unsigned char>(val.front())))
        val.remove_prefix(1);
      if (val == "st")
        closure = Closure::ST;
      else if (val == "hs")
        closure = Closure::HS;
      else
        fail("closure must be 'st' or 'hs'");
      continue;
    }
    std::size_t turnstile = sv.find("|-");
    if (turnstile == std::string_view::npos) fail("rule line needs '|-'");
    GroundRule g;
    std::string_view prem = sv.substr(0, turnstile);
    std::string_view concl = sv.substr(turnstile + 2);
    try {
      // premises: ';'-separated atomic sequents, possibly none
      std::size_t start = 0;
      while (start < prem.size()) {
        std::size_t semi = prem.find(';', start);
        std::string_view one =
            prem.substr(start, semi == std::string_view::npos ? prem.size() - start : semi - start);
        bool blank = true;
        for (char ch : one)
          if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) g.premises.push_back(parse_atomic_sequent(one));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
      }
      g.conclusion = parse_atomic_sequent(concl);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    rules.push_back(std::move(g));
  }
  if (!closure) throw Error("base file needs a 'closure: st' or 'closure: hs' line");
  return Base::make(std::move(rules), *closure);
}

}  // namespace bes
