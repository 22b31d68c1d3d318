#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bes/proof.hpp"
#include "bes/syntax.hpp"

namespace bes {

enum class Closure { HS, ST };

/// Fully ground atomic rule; an empty premise list makes it an atomic axiom.
struct GroundRule {
  std::vector<AtomicSequent> premises;
  AtomicSequent conclusion;
  std::string id;
  bool axiom() const { return premises.empty(); }
  bool operator==(const GroundRule&) const = default;
};

/// Rule schemas with arbitrary atomic context slots. Ainit and Acut quantify
/// over every atom of the universe; the simulation-family tags carry their
/// fixed proxy atoms.
enum class SchemaTag {
  Ainit,
  Acut,
  SimLAnd,
  SimRAnd,
  SimLOr,
  SimROr,
  SimLImp,
  SimRImp,
  SimLBot,
  SimRBot,
  QAnd1,
  QAnd2,
  QOr,
  QImp,
  QBot,
};

const char* schema_name(SchemaTag t);

struct SchemaRule {
  SchemaTag tag;
  /// Tag-dependent fixed atoms: [x] for the bot rules, [x, a] / [x, b] for the
  /// one-sided Q projections, [x, a, b] otherwise; empty for Ainit and Acut.
  std::vector<Atom> fixed;

  /// Fixed parts of the premises (context slots are implicit). Not meaningful
  /// for Ainit/Acut, which are engine built-ins.
  std::vector<AtomicSequent> premise_fixed() const;
  AtomicSequent conclusion_fixed() const;
  /// Premise-free schemas whose conclusion carries arbitrary contexts.
  bool axiom_schema() const { return tag == SchemaTag::Ainit || tag == SchemaTag::SimLBot; }

  bool operator==(const SchemaRule&) const = default;
};

struct SimInfo;  // attached by the simulation module

/// Finite atomic base: ground rules plus schemas, with an HS or ST closure
/// policy and an optional parent forming the extension chain. Every base is
/// closed under Ainit; ST bases are additionally closed under Acut.
class Base {
 public:
  static Base make(std::vector<GroundRule> ground, Closure closure);
  /// Child base with the same closure policy and the extra ground rules.
  /// Rules with empty ids get stable generated ones.
  Base extend(std::vector<GroundRule> rules) const;
  Base with_schemas(std::vector<SchemaRule> extra) const;
  Base with_sim(std::shared_ptr<const SimInfo> info) const;

  const std::vector<GroundRule>& ground() const { return ground_; }
  const std::vector<SchemaRule>& schemas() const { return schemas_; }
  Closure closure() const { return closure_; }
  std::shared_ptr<const Base> parent() const { return parent_; }
  std::shared_ptr<const SimInfo> sim() const { return sim_; }

  const GroundRule* find_rule(std::string_view id) const;
  bool has_schema(const SchemaRule& s) const;
  /// Atoms mentioned by ground rules and schema fixed slots.
  AtomSet base_atoms() const;
  /// Base-file rendering; schemas appear as comment lines.
  std::string text() const;

 private:
  std::vector<GroundRule> ground_;   // cumulative, parents included
  std::vector<SchemaRule> schemas_;  // cumulative
  Closure closure_ = Closure::HS;
  std::shared_ptr<const Base> parent_;
  std::shared_ptr<const SimInfo> sim_;
};

/// One step of provenance: how a derived sequent was obtained.
struct Justification {
  enum class Kind { GroundAxiom, GroundRule, Ainit, SchemaAxiom, Schema, Acut };
  Kind kind = Kind::Ainit;
  std::string rule_id;               // Ground*
  std::optional<SchemaRule> schema;  // SchemaAxiom / Schema
  std::optional<Atom> param;         // Ainit atom, Acut cut atom
  std::vector<AtomicSequent> supports;
  /// Fixed parts of the fired rule, one per support, and of its conclusion;
  /// reconstruction uses them to weaken the premises into actual instances.
  std::vector<AtomicSequent> premise_templates;
  AtomicSequent conclusion_template;
};

/// Saturation fixpoint: the subsumption antichain of minimal derivable atomic
/// sequents over a finite universe, with one canonical justification per
/// sequent ever derived.
class DerivableSet {
 public:
  const AtomSet& universe() const { return universe_; }
  const std::vector<AtomicSequent>& minimal() const { return minimal_; }
  const std::map<AtomicSequent, Justification>& provenance() const { return prov_; }

  /// True iff the query is weakening-subsumed by a minimal sequent (or is an
  /// Ainit instance, which covers atoms outside the universe).
  bool derives(const AtomicSequent& q) const;
  /// Canonically first minimal sequent subsuming q.
  std::optional<AtomicSequent> subsumer(const AtomicSequent& q) const;

 private:
  friend DerivableSet saturate(const Base&, const AtomSet&);
  AtomSet universe_;
  std::vector<AtomicSequent> minimal_;
  std::map<AtomicSequent, Justification> prov_;
};

/// Computes the derivability fixpoint over the atoms of the base plus
/// extra_atoms. Deterministic: rules fire in canonical order on the sorted
/// antichain, and the first justification found is kept.
DerivableSet saturate(const Base& b, const AtomSet& extra_atoms);

bool derivable(const Base& b, const AtomicSequent& s);

/// Checkable derivation tree reconstructed from provenance. Each node's
/// sequent is the recorded derived sequent; children line up with the
/// justification's supports.
struct AtomicDerivation {
  AtomicSequent sequent;
  Justification just;
  std::vector<AtomicDerivation> children;
};

/// Root tree plus the queried target; the root subsumes the target and the
/// gap is one final weakening.
struct Derivation {
  AtomicDerivation root;
  AtomicSequent target;
};

Derivation derivation(const Base& b, const AtomicSequent& s);
Derivation derivation_from(const DerivableSet& ds, const AtomicSequent& s);

/// Validates every node against the base's rules under Def-3 semantics
/// (axioms absorb weakening; rule firings must satisfy the context-union
/// equations for some split).
CheckResult check_derivation(const Base& b, const Derivation& d);

std::size_t derivation_size(const AtomicDerivation& d);

std::string to_text(const Derivation& d);
std::string to_latex(const Derivation& d);
std::string derivation_to_json(const Derivation& d);

/// Base files: optional comment lines (#...), a `closure: st|hs` header, and
/// one rule per line, `premise ; ... |- conclusion` over atomic sequents.
Base parse_base_file(std::string_view text);

}  // namespace bes
