#pragma once

#include <map>
#include <set>
#include <string>

#include "bes/base.hpp"
#include "bes/prover.hpp"

namespace bes {

/// Injective map from a subformula-closed scope to atoms: identity on atoms,
/// "@(<canonical text>)" on everything else, so injectivity is syntactic and
/// the inverse is recoverable from the name alone.
struct AtomicMapping {
  FormulaSet scope;
  std::map<Formula, Atom> forward;
  std::map<Atom, Formula> inverse;  // proxies only; user atoms are implicit

  Atom map(const Formula& f) const;
  Formula unmap(const Atom& a) const;
  AtomSet map_set(const FormulaSet& fs) const;
  FormulaSet unmap_set(const AtomSet& as) const;
  bool in_scope(const Formula& f) const { return scope.contains(f); }
};

/// Proxy atom for a non-atomic formula.
Atom proxy_atom(const Formula& f);

AtomicMapping atomic_mapping(const FormulaSet& sigma);

/// Full = the ST-closed simulation family; Quasi = the HS-closed family whose
/// Q rules fold cut into right-to-left projections.
enum class SimulationVariant { Full, Quasi };

/// Internal flavor: the full family can also be closed cut-free, which is
/// exactly the configuration the counterexample report exercises.
enum class SimFlavor { FullST, FullHS, Quasi };

struct SimInfo {
  AtomicMapping mapping;
  SimFlavor flavor = SimFlavor::FullST;
};

Base simulation_base(const FormulaSet& sigma, const AtomicMapping& m, SimulationVariant v);
Base simulation_base_flavored(const FormulaSet& sigma, const AtomicMapping& m, SimFlavor f);

/// Replaces each marked axiom node by an identity axiom over `gamma` and adds
/// `gamma` to the antecedent of every node below. With an empty marked set the
/// whole derivation is reweakened (every node gains `gamma`); with marked
/// rules that never occur, the derivation comes back unchanged.
AtomicDerivation prepend_context(const AtomicDerivation& d, const AtomSet& gamma,
                                 const std::set<std::string>& marked);

/// Node-by-node image under the mapping: Ainit becomes init, Acut becomes
/// Cut, simulation schemas become the same-named rules, Q schemas become Q*
/// placeholders. Ground-rule nodes are rejected.
Proof substitute(const AtomicDerivation& d, const AtomicMapping& m);

/// Eliminates every Q* placeholder by the corresponding cut gadget; the
/// result has the same end-sequent and passes the cut-allowing checker.
Proof rewrite_q_rules(const Proof& p);

struct ExtractionReport {
  SimulationVariant variant = SimulationVariant::Full;
  AtomicMapping mapping;
  Sequent goal;
  Derivation stage_pi;                    // derivation of => Sigma_At in the extended base
  Derivation stage_pi_prime;              // after context prepending
  Proof stage_pi_dprime;                  // after atom substitution (Cut / Q* nodes)
  std::optional<Proof> stage_q_rewritten; // quasi only: Q* gadgets expanded
  Proof final_proof;                      // cut-free, concludes exactly the goal
  struct Stats {
    std::size_t antichain = 0;
    std::size_t pi_nodes = 0;
    std::size_t pi_prime_nodes = 0;
    std::size_t pi_dprime_nodes = 0;
    std::size_t rewritten_nodes = 0;
    std::size_t final_nodes = 0;
  } stats;
};

/// Runs the completeness argument as a pipeline: build the simulation base
/// for the goal's subformulas, add one axiom per antecedent formula, saturate,
/// reconstruct, prepend, substitute, rewrite Q rules (quasi), and eliminate
/// cuts. Every stage is checked; failures throw.
ExtractionReport extract_proof(const FormulaSet& gamma, const FormulaSet& delta,
                               SimulationVariant v);

std::string report_to_text(const ExtractionReport& r);
std::string report_to_json(const ExtractionReport& r);
std::string report_to_latex(const ExtractionReport& r);

/// The cut-contrast counterexample: over the scope of {q & r, q}, the
/// cut-free full simulation base extended by an axiom for the proxy of q & r
/// proves the proxy and both projections hypothetically, yet neither q nor r
/// categorically; the cut-closed variant proves q.
struct Prop6Report {
  struct Fact {
    std::string variant;  // "hs" or "st"
    std::string query;
    bool expected = false;
    bool actual = false;
    bool ok() const { return expected == actual; }
  };
  std::vector<Fact> facts;
  bool ok = false;
  std::string text() const;
  std::string json() const;
};

Prop6Report prop6_counterexample();

}  // namespace bes
