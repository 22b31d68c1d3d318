#include "bes/prover.hpp"

#include <cassert>

namespace bes {

namespace {

// Either a finished subproof or the antecedent-atom set of an open leaf.
struct SearchResult {
  std::optional<Proof> proof;
  AtomSet open_left;
};

SearchResult search(const Sequent& s) {
  for (const Formula& f : s.left)
    if (s.right.contains(f)) return {Proof{s, Rule::Init, {}}, {}};
  if (s.left.contains(Formula::bottom())) return {Proof{s, Rule::LBot, {}}, {}};

  auto first_compound = [](const FormulaSet& side) -> std::optional<Formula> {
    for (const Formula& f : side)
      if (!f.is_atom()) return f;
    return std::nullopt;
  };

  auto unary = [&](Rule r, Sequent premise) -> SearchResult {
    SearchResult sub = search(premise);
    if (!sub.proof) return sub;
    return {Proof{s, r, {std::move(*sub.proof)}}, {}};
  };
  auto binary = [&](Rule r, Sequent p1, Sequent p2) -> SearchResult {
    SearchResult a = search(p1);
    if (!a.proof) return a;
    SearchResult b = search(p2);
    if (!b.proof) return b;
    return {Proof{s, r, {std::move(*a.proof), std::move(*b.proof)}}, {}};
  };

  if (auto f = first_compound(s.left)) {
    FormulaSet rest = s.left.minus(*f);
    switch (f->kind()) {
      case Conn::And:
        return unary(Rule::LAnd, {rest.with(f->left()).with(f->right()), s.right});
      case Conn::Or:
        return binary(Rule::LOr, {rest.with(f->left()), s.right}, {rest.with(f->right()), s.right});
      case Conn::Imp:
        return binary(Rule::LImp, {rest, s.right.with(f->left())},
                      {rest.with(f->right()), s.right});
      default:
        assert(false && "bot on the left closes above");
        return {};
    }
  }
  if (auto f = first_compound(s.right)) {
    FormulaSet rest = s.right.minus(*f);
    switch (f->kind()) {
      case Conn::And:
        return binary(Rule::RAnd, {s.left, rest.with(f->left())}, {s.left, rest.with(f->right())});
      case Conn::Or:
        return unary(Rule::ROr, {s.left, rest.with(f->left()).with(f->right())});
      case Conn::Imp:
        return unary(Rule::RImp, {s.left.with(f->left()), rest.with(f->right())});
      case Conn::Bottom:
        return unary(Rule::RBot, {s.left, rest});
      default:
        assert(false);
        return {};
    }
  }

  // Saturated open leaf: both sides atomic and disjoint.
  AtomSet open;
  for (const Formula& f : s.left) open.insert(f.as_atom());
  return {std::nullopt, open};
}

}  // namespace

Decision prove(const Sequent& s) {
  SearchResult r = search(s);
  if (r.proof) {
    assert(check_proof(*r.proof, false).ok);
    return {std::move(r.proof), std::nullopt};
  }
  Valuation v;
  for (const Atom& a : atoms_of(s)) v[a] = r.open_left.contains(a);
  assert(falsified_by(s, v));
  return {std::nullopt, std::move(v)};
}

bool eval(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = v.find(f.as_atom());
      return it != v.end() && it->second;
    }
    case Conn::Bottom: return false;
    case Conn::And: return eval(f.left(), v) && eval(f.right(), v);
    case Conn::Or: return eval(f.left(), v) || eval(f.right(), v);
    case Conn::Imp: return !eval(f.left(), v) || eval(f.right(), v);
  }
  return false;
}

bool falsified_by(const Sequent& s, const Valuation& v) {
  for (const Formula& f : s.left)
    if (!eval(f, v)) return false;
  for (const Formula& f : s.right)
    if (eval(f, v)) return false;
  return true;
}

bool truth_table_valid(const Sequent& s) {
  AtomSet atoms = atoms_of(s);
  if (atoms.size() > 24) throw Error("truth-table oracle limited to 24 atoms");
  std::vector<Atom> names(atoms.begin(), atoms.end());
  for (std::uint64_t mask = 0; mask < (1ull << names.size()); ++mask) {
    Valuation v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (mask >> i) & 1;
    bool all_left = true;
    for (const Formula& f : s.left)
      if (!eval(f, v)) {
        all_left = false;
        break;
      }
    if (!all_left) continue;
    bool some_right = false;
    for (const Formula& f : s.right)
      if (eval(f, v)) {
        some_right = true;
        break;
      }
    if (!some_right) return false;
  }
  return true;
}

Proof eliminate_cuts(const Proof& p) {
  if (!contains_rule(p, Rule::Cut)) return p;
  CheckResult chk = check_proof(p, true);
  if (!chk.ok) throw Error("eliminate_cuts: input proof is invalid: " + chk.error);
  Decision d = prove(p.conclusion);
  if (!d.provable()) throw Error("eliminate_cuts: end-sequent is not provable, invalid input");
  return std::move(*d.proof);
}

}  // namespace bes
