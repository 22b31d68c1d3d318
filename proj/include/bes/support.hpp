#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bes/base.hpp"
#include "bes/prover.hpp"
#include "bes/simulation.hpp"

namespace bes {

/// Semantic judgment Gamma |= Delta (the base is supplied per call).
struct Judgment {
  FormulaSet antecedents, succedents;
  std::string text() const;
};

/// One obligation after exhaustively applying the succedent clauses: the
/// accumulated hypotheses and an atom-only succedent set.
struct Obligation {
  FormulaSet hypotheses;
  AtomSet succedent_atoms;
  bool operator==(const Obligation&) const = default;
};

using InfNormalForm = std::vector<Obligation>;

/// Applies the right-hand clauses until every succedent is atomic: a
/// conjunction splits the obligation, a disjunction flattens, bot disappears,
/// and an implication moves its antecedent into the hypotheses.
InfNormalForm unfold(const Judgment& j);

enum class VerdictKind { Supported, NotSupported, Unknown };

struct SupportVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  /// Derivability facts backing a Supported verdict.
  std::vector<AtomicSequent> facts;
  /// Counter-extension plus the atomic query it fails to derive.
  std::optional<Base> witness_base;
  std::optional<AtomicSequent> failed_query;
  std::string reason;

  bool supported() const { return kind == VerdictKind::Supported; }
  std::string text() const;
};

/// Atomic support. Categorical judgments are decided exactly by derivability
/// of => Delta. Hypothetical judgments over ST-closed bases are decided by
/// derivability of Gamma => Delta; over HS-closed bases the verdict is
/// NotSupported when the extension by one axiom per hypothesis atom fails to
/// derive => Delta (a genuine counter-extension), and Unknown otherwise.
SupportVerdict support_atomic(const Base& b, const AtomSet& gamma, const AtomSet& delta);

/// Support over simulation bases. On cut-closed full bases the judgment maps
/// exactly to derivability of the proxied sequent. On quasi bases the
/// categorical case is exact and the hypothetical case one-sided. On the
/// cut-free full family the judgment is unfolded and decided obligation by
/// obligation where possible.
SupportVerdict support_oracle(const Base& b, const FormulaSet& gamma, const FormulaSet& delta);

/// Bounded refuter: enumerates extensions of the base by up to `budget`
/// added rules over the universe (axioms first, then single-premise rules, in
/// canonical order) and reports the first extension under which some unfolded
/// obligation provably fails. Never answers Supported.
SupportVerdict support_refute(const Base& b, const Judgment& j, unsigned budget);

enum class ValidityFlavor { WithCut, CutFree };

struct ValidityResult {
  bool is_valid = false;
  Decision certificate;
};

/// Validity of Gamma |= Delta over the structural (resp. cut-free) base
/// hierarchy; both coincide with provability, so the certificate is a
/// cut-free proof or a refuting valuation.
ValidityResult valid(const FormulaSet& gamma, const FormulaSet& delta, ValidityFlavor flavor);

}  // namespace bes
