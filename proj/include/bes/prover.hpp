#pragma once

#include <map>
#include <optional>

#include "bes/proof.hpp"
#include "bes/syntax.hpp"

namespace bes {

using Valuation = std::map<Atom, bool>;

/// Outcome of the decision procedure: either a cut-free proof of the input or
/// a classical valuation making every antecedent true and every succedent
/// false.
struct Decision {
  std::optional<Proof> proof;
  std::optional<Valuation> refutation;
  bool provable() const { return proof.has_value(); }
};

/// Decides the sequent by backward search. Binary rules duplicate the full
/// context into both premises, which is a legal multiplicative instance over
/// set-sequents and makes every step invertible; each step removes one
/// connective occurrence, so the search terminates. Open saturated leaves
/// induce the refuting valuation (antecedent atoms true, all others false).
Decision prove(const Sequent& s);

bool eval(const Formula& f, const Valuation& v);
/// True iff v makes every antecedent member true and every succedent member
/// false.
bool falsified_by(const Sequent& s, const Valuation& v);

/// Classical truth-table oracle: true iff every valuation satisfying the
/// antecedent satisfies some succedent. bot is false everywhere.
bool truth_table_valid(const Sequent& s);

/// Returns a cut-free proof of p's end-sequent. Inputs without Cut nodes come
/// back unchanged; otherwise the end-sequent is re-proved from scratch.
/// Precondition: check_proof(p, true) accepts.
Proof eliminate_cuts(const Proof& p);

}  // namespace bes
