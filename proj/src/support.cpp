#include "bes/support.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace bes {

std::string Judgment::text() const {
  Sequent s{antecedents, succedents};
  std::string t = s.text();
  std::size_t at = t.find("=>");
  return t.substr(0, at) + "|=" + t.substr(at + 2);
}

std::string SupportVerdict::text() const {
  switch (kind) {
    case VerdictKind::Supported: {
      std::string out = "supported";
      for (const AtomicSequent& f : facts) out += "\n  fact: " + f.text();
      return out;
    }
    case VerdictKind::NotSupported: {
      std::string out = "not supported";
      if (failed_query) out += "\n  failing query: " + failed_query->text();
      if (witness_base) out += "\n  counter-extension:\n" + witness_base->text();
      return out;
    }
    default: return "unknown (" + reason + ")";
  }
}

// ---------------------------------------------------------------------------
// Unfolding

InfNormalForm unfold(const Judgment& j) {
  struct Item {
    FormulaSet hyp;
    FormulaSet succ;
  };
  std::deque<Item> work{{j.antecedents, j.succedents}};
  InfNormalForm done;
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    std::optional<Formula> pick;
    for (const Formula& f : it.succ)
      if (!f.is_atom()) {
        pick = f;
        break;
      }
    if (!pick) {
      Obligation o;
      o.hypotheses = it.hyp;
      for (const Formula& f : it.succ) o.succedent_atoms.insert(f.as_atom());
      done.push_back(std::move(o));
      continue;
    }
    FormulaSet rest = it.succ.minus(*pick);
    switch (pick->kind()) {
      case Conn::And:
        work.push_back({it.hyp, rest.with(pick->left())});
        work.push_back({it.hyp, rest.with(pick->right())});
        break;
      case Conn::Or:
        work.push_back({it.hyp, rest.with(pick->left()).with(pick->right())});
        break;
      case Conn::Imp:
        work.push_back({it.hyp.with(pick->left()), rest.with(pick->right())});
        break;
      case Conn::Bottom:
        work.push_back({it.hyp, rest});
        break;
      default:
        break;
    }
  }
  return done;
}

// ---------------------------------------------------------------------------
// Atomic support

namespace {

SupportVerdict verdict_supported(std::vector<AtomicSequent> facts) {
  SupportVerdict v;
  v.kind = VerdictKind::Supported;
  v.facts = std::move(facts);
  return v;
}

SupportVerdict verdict_not_supported(Base witness, AtomicSequent failed) {
  SupportVerdict v;
  v.kind = VerdictKind::NotSupported;
  v.witness_base = std::move(witness);
  v.failed_query = std::move(failed);
  return v;
}

SupportVerdict verdict_unknown(std::string reason) {
  SupportVerdict v;
  v.kind = VerdictKind::Unknown;
  v.reason = std::move(reason);
  return v;
}

/// One axiom per hypothesis atom, as in the completeness argument. A single
/// joint axiom would support the hypotheses only disjunctively and does not
/// witness a broken obligation.
Base hypothesis_extension(const Base& b, const AtomSet& gamma) {
  std::vector<GroundRule> axs;
  int k = 0;
  for (const Atom& a : gamma) axs.push_back({{}, {{}, {a}}, "hyp" + std::to_string(++k)});
  return b.extend(std::move(axs));
}

}  // namespace

SupportVerdict support_atomic(const Base& b, const AtomSet& gamma, const AtomSet& delta) {
  AtomSet all = gamma.unite(delta);
  AtomicSequent categorical{{}, delta};
  if (gamma.empty()) {
    DerivableSet ds = saturate(b, all);
    if (ds.derives(categorical)) return verdict_supported({categorical});
    return verdict_not_supported(b, categorical);
  }

  Base d = hypothesis_extension(b, gamma);
  bool witness_fails = !saturate(d, all).derives(categorical);

  AtomicSequent hyp{gamma, delta};
  if (b.closure() == Closure::ST) {
    DerivableSet ds = saturate(b, all);
    if (ds.derives(hyp)) {
      if (witness_fails)
        throw Error("support_atomic internal: cut-closed witness disagrees (bug signal)");
      return verdict_supported({hyp});
    }
    if (!witness_fails)
      throw Error("support_atomic internal: witness derives the conclusion (bug signal)");
    return verdict_not_supported(d, categorical);
  }
  if (witness_fails) return verdict_not_supported(d, categorical);
  return verdict_unknown("hypothetical atomic support over a cut-free base is undecidable here");
}

// ---------------------------------------------------------------------------
// Simulation oracle

namespace {

SupportVerdict oracle_unfolded(const Base& b, const Judgment& j) {
  InfNormalForm obls = unfold(j);
  bool any_unknown = false;
  std::string unknown_reason;
  std::vector<AtomicSequent> facts;
  for (const Obligation& o : obls) {
    AtomSet hyp_atoms;
    bool atomic = true;
    for (const Formula& f : o.hypotheses) {
      if (!f.is_atom()) {
        atomic = false;
        break;
      }
      hyp_atoms.insert(f.as_atom());
    }
    if (!atomic) {
      any_unknown = true;
      unknown_reason = "obligation with compound hypotheses";
      continue;
    }
    SupportVerdict v = support_atomic(b, hyp_atoms, o.succedent_atoms);
    switch (v.kind) {
      case VerdictKind::NotSupported: return v;
      case VerdictKind::Unknown:
        any_unknown = true;
        unknown_reason = v.reason;
        break;
      case VerdictKind::Supported:
        facts.insert(facts.end(), v.facts.begin(), v.facts.end());
        break;
    }
  }
  if (any_unknown) return verdict_unknown(unknown_reason);
  return verdict_supported(std::move(facts));
}

}  // namespace

SupportVerdict support_oracle(const Base& b, const FormulaSet& gamma, const FormulaSet& delta) {
  std::shared_ptr<const SimInfo> sim = b.sim();
  if (!sim) throw Error("support_oracle requires a simulation base");
  const AtomicMapping& m = sim->mapping;
  for (const Formula& f : subformula_closure(gamma.unite(delta)))
    if (!m.in_scope(f)) throw Error("scope violation: " + f.text() + " is outside the mapping");

  AtomSet gamma_at = m.map_set(gamma);
  AtomSet delta_at = m.map_set(delta);
  AtomSet all = gamma_at.unite(delta_at).unite(m.map_set(m.scope));
  AtomicSequent mapped{gamma_at, delta_at};
  AtomicSequent categorical{{}, delta_at};

  switch (sim->flavor) {
    case SimFlavor::FullST: {
      DerivableSet ds = saturate(b, all);
      if (ds.derives(mapped)) return verdict_supported({mapped});
      Base d = hypothesis_extension(b, gamma_at);
      if (saturate(d, all).derives(categorical))
        throw Error("support_oracle internal: witness derives the conclusion (bug signal)");
      return verdict_not_supported(d, categorical);
    }
    case SimFlavor::Quasi: {
      DerivableSet ds = saturate(b, all);
      if (gamma.empty()) {
        if (ds.derives(categorical)) return verdict_supported({categorical});
        return verdict_not_supported(b, categorical);
      }
      if (!ds.derives(mapped)) {
        Base d = hypothesis_extension(b, gamma_at);
        if (saturate(d, all).derives(categorical))
          throw Error("support_oracle internal: witness derives the conclusion (bug signal)");
        return verdict_not_supported(d, categorical);
      }
      return verdict_unknown("hypothetical support over the quasi family is one-sided");
    }
    case SimFlavor::FullHS:
      // The cut-free full family does not track the support relation at the
      // proxy level, so fall back to the definitional clauses.
      return oracle_unfolded(b, {gamma, delta});
  }
  return verdict_unknown("unreachable");
}

// ---------------------------------------------------------------------------
// Bounded refuter

SupportVerdict support_refute(const Base& b, const Judgment& j, unsigned budget) {
  InfNormalForm obls = unfold(j);
  std::vector<std::pair<AtomSet, AtomSet>> atomic_obls;  // (hypothesis atoms, succedents)
  for (const Obligation& o : obls) {
    AtomSet hyp_atoms;
    for (const Formula& f : o.hypotheses) {
      if (!f.is_atom()) return verdict_unknown("compound hypotheses");
      hyp_atoms.insert(f.as_atom());
    }
    atomic_obls.push_back({hyp_atoms, o.succedent_atoms});
  }

  AtomSet uni = b.base_atoms().unite(atoms_of({j.antecedents, j.succedents}));
  std::vector<Atom> atoms(uni.begin(), uni.end());
  if (atoms.size() > 16) throw Error("support_refute universe limited to 16 atoms");

  auto nth_sequent = [&](std::uint64_t code) {
    AtomicSequent s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (code & (1ull << (2 * i))) s.left.insert(atoms[i]);
      if (code & (2ull << (2 * i))) s.right.insert(atoms[i]);
    }
    return s;
  };

  // Candidate pool in canonical order: axioms => S over the universe, then
  // single-premise rules.
  std::vector<GroundRule> pool;
  std::uint64_t n_sets = 1ull << atoms.size();
  for (std::uint64_t mask = 1; mask < n_sets; ++mask) {
    AtomicSequent concl;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1ull << i)) concl.right.insert(atoms[i]);
    pool.push_back({{}, concl, "ax" + std::to_string(mask)});
  }
  if (budget > 0 && atoms.size() <= 4) {
    std::uint64_t n_seq = 1ull << (2 * atoms.size());
    for (std::uint64_t pc = 0; pc < n_seq; ++pc)
      for (std::uint64_t cc = 0; cc < n_seq; ++cc)
        pool.push_back({{nth_sequent(pc)}, nth_sequent(cc),
                        "rule" + std::to_string(pc) + "_" + std::to_string(cc)});
  }

  auto try_extension = [&](const Base& c) -> std::optional<SupportVerdict> {
    for (const auto& [hyp, succ] : atomic_obls) {
      Base d = hypothesis_extension(c, hyp);
      AtomicSequent q{{}, succ};
      if (!saturate(d, uni.unite(succ)).derives(q))
        return verdict_not_supported(d, q);
    }
    return std::nullopt;
  };

  if (auto v = try_extension(b)) return *v;
  std::vector<std::size_t> idx;
  // Lexicographic subsets of the pool of each size up to the budget.
  std::function<std::optional<SupportVerdict>(std::size_t, std::size_t)> rec =
      [&](std::size_t start, std::size_t remaining) -> std::optional<SupportVerdict> {
    if (remaining == 0) {
      std::vector<GroundRule> rules;
      for (std::size_t i : idx) rules.push_back(pool[i]);
      return try_extension(b.extend(std::move(rules)));
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      idx.push_back(i);
      if (auto v = rec(i + 1, remaining - 1)) return v;
      idx.pop_back();
    }
    return std::nullopt;
  };
  for (unsigned size = 1; size <= budget; ++size) {
    idx.clear();
    if (auto v = rec(0, size)) return *v;
  }
  return verdict_unknown("no counter-extension within budget " + std::to_string(budget));
}

// ---------------------------------------------------------------------------
// Validity

ValidityResult valid(const FormulaSet& gamma, const FormulaSet& delta, ValidityFlavor) {
  // Soundness and completeness hold for both hierarchies, so with-cut and
  // cut-free validity coincide with provability.
  Decision d = prove({gamma, delta});
  return {d.provable(), std::move(d)};
}

}  // namespace bes
