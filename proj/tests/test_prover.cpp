#include <doctest.h>

#include "bes/checks.hpp"
#include "bes/prover.hpp"

using namespace bes;

TEST_SUITE_BEGIN("prover");

namespace {
Proof leaf(const char* s, Rule r = Rule::Init) { return {parse_sequent(s), r, {}}; }
}  // namespace

TEST_CASE("checker accepts legal instances") {
  CHECK(check_proof(leaf("p, q => p"), false).ok);
  CHECK(check_proof(leaf("p, bot => q", Rule::LBot), false).ok);

  // contexts duplicated into both premises collapse under set union
  Proof rand{parse_sequent("p => p & p"), Rule::RAnd, {leaf("p => p"), leaf("p => p")}};
  CHECK(check_proof(rand, false).ok);

  Proof rimp{parse_sequent("=> p -> p"), Rule::RImp, {leaf("p => p")}};
  CHECK(check_proof(rimp, false).ok);

  Proof rbot{parse_sequent("p => bot, p"), Rule::RBot, {leaf("p => p")}};
  CHECK(check_proof(rbot, false).ok);
}

TEST_CASE("checker rejects broken instances with a reason") {
  // premise must have shape A, Gamma => Delta, B
  Proof bad{parse_sequent("=> p -> q"), Rule::RImp, {leaf("q, p => q")}};
  CheckResult r = check_proof(bad, false);
  CHECK_FALSE(r.ok);
  CHECK(r.error.find("R->") != std::string::npos);

  CHECK_FALSE(check_proof(leaf("p => q"), false).ok);
  CHECK_FALSE(check_proof(leaf("p => q", Rule::LBot), false).ok);

  Proof arity{parse_sequent("p & q => p"), Rule::LAnd, {}};
  CHECK_FALSE(check_proof(arity, false).ok);

  // conclusion antecedent invents a formula from nowhere
  Proof invent{parse_sequent("r => p & p"), Rule::RAnd, {leaf("p => p"), leaf("p => p")}};
  CHECK_FALSE(check_proof(invent, false).ok);
}

TEST_CASE("cut is gated by the checker mode") {
  Proof cut{parse_sequent("q & r => q"),
            Rule::Cut,
            {Proof{parse_sequent("q & r => q"), Rule::LAnd, {leaf("q, r => q")}},
             leaf("q => q")}};
  CHECK(check_proof(cut, true).ok);
  CheckResult no_cut = check_proof(cut, false);
  CHECK_FALSE(no_cut.ok);
  CHECK(no_cut.error.find("Cut") != std::string::npos);
}

TEST_CASE("Q* placeholders are never CLp proofs") {
  Proof q{parse_sequent("p => q"), Rule::QBot, {leaf("p => bot, q", Rule::Init)}};
  CHECK_FALSE(check_proof(q, true).ok);
}

TEST_CASE("prove decides the running examples") {
  CHECK(prove(parse_sequent("q & r => q")).provable());
  CHECK(prove(parse_sequent("=> ((p -> q) -> p) -> p")).provable());

  Decision d = prove(parse_sequent("=> p | q"));
  REQUIRE_FALSE(d.provable());
  CHECK(d.refutation->at(Atom::user("p")) == false);
  CHECK(d.refutation->at(Atom::user("q")) == false);

  CHECK(prove(parse_sequent("=>")).provable() == false);
  CHECK(prove(parse_sequent("bot =>")).provable());
  CHECK(prove(parse_sequent("=> p -> p")).provable());
}

TEST_CASE("truth table oracle") {
  CHECK(truth_table_valid(parse_sequent("p => p")));
  CHECK_FALSE(truth_table_valid(parse_sequent("=> bot")));
  CHECK(truth_table_valid(parse_sequent("p -> q, p => q")));
  CHECK(truth_table_valid(parse_sequent("=> p | ~p")));
  CHECK_FALSE(truth_table_valid(parse_sequent("p | q => p & q")));
}

TEST_CASE("decision agreement with self-checking witnesses") {
  checks::Rng g(101);
  std::vector<Atom> atoms = {Atom::user("p"), Atom::user("q"), Atom::user("r"), Atom::user("s")};
  for (int i = 0; i < 3000; ++i) {
    Sequent s = checks::random_sequent(g, atoms, 5, 2, true);
    Decision d = prove(s);
    REQUIRE(d.provable() == truth_table_valid(s));
    if (d.provable()) {
      REQUIRE(check_proof(*d.proof, false).ok);
      REQUIRE(d.proof->conclusion == s);
    } else {
      REQUIRE(falsified_by(s, *d.refutation));
    }
  }
}

TEST_CASE("eliminate_cuts") {
  Proof straight = *prove(parse_sequent("p & q => q")).proof;
  // structurally identical output on cut-free input
  CHECK(proof_to_json(eliminate_cuts(straight)) == proof_to_json(straight));

  Proof with_cut{parse_sequent("q & r => q"),
                 Rule::Cut,
                 {Proof{parse_sequent("q & r => q"), Rule::LAnd, {leaf("q, r => q")}},
                  leaf("q => q")}};
  REQUIRE(check_proof(with_cut, true).ok);
  Proof out = eliminate_cuts(with_cut);
  CHECK(check_proof(out, false).ok);
  CHECK_FALSE(contains_rule(out, Rule::Cut));
  CHECK(out.conclusion == with_cut.conclusion);

  Proof broken{parse_sequent("=> q"), Rule::Cut, {leaf("=> p"), leaf("p => q")}};
  CHECK_THROWS_AS(eliminate_cuts(broken), Error);
}

TEST_CASE("weakening a proof keeps it valid") {
  checks::Rng g(55);
  std::vector<Atom> atoms = {Atom::user("p"), Atom::user("q"), Atom::user("r")};
  int done = 0;
  for (int i = 0; i < 500 && done < 120; ++i) {
    Sequent s = checks::random_sequent(g, atoms, 4, 2, true);
    Decision d = prove(s);
    if (!d.provable()) continue;
    done++;
    FormulaSet extra_l{checks::random_formula(g, atoms, 2, true)};
    FormulaSet extra_r{checks::random_formula(g, atoms, 2, true)};
    Proof w = weaken_proof(*d.proof, extra_l, extra_r);
    CHECK(check_proof(w, false).ok);
    CHECK(w.conclusion.left == s.left.unite(extra_l));
    CHECK(w.conclusion.right == s.right.unite(extra_r));
  }
  CHECK(done > 50);
}

TEST_CASE("proof JSON round-trips through the parser") {
  Proof p = *prove(parse_sequent("p & (q | r) => (p & q) | (p & r)")).proof;
  Proof q = proof_from_json(proof_to_json(p));
  CHECK(proof_to_json(q) == proof_to_json(p));
  CHECK(check_proof(q, false).ok);
  CHECK_THROWS_AS(proof_from_json("{\"rule\": \"init\"}"), Error);
  CHECK_THROWS_AS(proof_from_json("{\"sequent\": \"p => p\", \"rule\": \"nope\"}"), Error);
}

TEST_CASE("latex export emits one inference per node") {
  Proof p = *prove(parse_sequent("=> p -> p")).proof;
  std::string tex = to_latex(p);
  CHECK(tex.find("\\begin{prooftree}") != std::string::npos);
  CHECK(tex.find("\\RightLabel{\\scriptsize{$R{\\to}$}}") != std::string::npos);
  CHECK(tex.find("p \\Rightarrow p") != std::string::npos);
}

TEST_SUITE_END();
