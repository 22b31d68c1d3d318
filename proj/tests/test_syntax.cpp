#include <doctest.h>

#include "bes/checks.hpp"
#include "bes/syntax.hpp"

using namespace bes;

TEST_SUITE_BEGIN("syntax");

TEST_CASE("precedence and keywords") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(parse_formula("p & q -> r") == Formula::imp(Formula::conj(p, q), r));
  CHECK(parse_formula("bot") == Formula::bottom());
  CHECK(parse_formula("p | q | r") == Formula::disj(p, Formula::disj(q, r)));
  CHECK(parse_formula("p & q & r") == Formula::conj(p, Formula::conj(q, r)));
  CHECK(parse_formula("p -> q -> r") == Formula::imp(p, Formula::imp(q, r)));
  CHECK(parse_formula("(p -> q) -> r") == Formula::imp(Formula::imp(p, q), r));
  CHECK(parse_formula("~p") == Formula::imp(p, Formula::bottom()));
  CHECK(parse_formula("~~p") == parse_formula("(p -> bot) -> bot"));
  CHECK(parse_formula("p | q & r") == Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse_formula("x'") == Formula::atom("x'"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("@foo"), ParseError);
  try {
    parse_formula("p & ");
  } catch (const ParseError& e) {
    CHECK(e.pos >= 3);
  }
}

TEST_CASE("sequent parsing collapses duplicates") {
  Sequent s = parse_sequent("p, p => q");
  CHECK(s.left.size() == 1);
  CHECK(s.right.size() == 1);

  Sequent t = parse_sequent("=> p -> p");
  CHECK(t.left.empty());
  CHECK(t.right.size() == 1);

  Sequent u = parse_sequent("p & q => q, r");
  CHECK(u.left.size() == 1);
  CHECK(u.right.size() == 2);

  CHECK(parse_sequent("=>").left.empty());
  CHECK(parse_sequent("=>").right.empty());
  CHECK_THROWS_AS(parse_sequent("p, q"), ParseError);
}

TEST_CASE("judgment parsing keeps the bar out of formulas") {
  Sequent j = parse_judgment("p | q |= r");
  CHECK(j.left.size() == 1);
  CHECK((*j.left.begin()).kind() == Conn::Or);
  CHECK(parse_judgment("|= p").left.empty());
}

TEST_CASE("atomic sequents accept mapped atoms") {
  AtomicSequent s = parse_atomic_sequent("@(q & r) => q");
  CHECK(s.left.size() == 1);
  CHECK(s.left.begin()->name() == "@(q & r)");
  CHECK(s.left.begin()->mapped());
  // spacing normalizes to the canonical name
  CHECK(parse_atomic_sequent("@(q&r) => q") == s);
  CHECK_THROWS_AS(parse_atomic_sequent("p & q => r"), ParseError);
  CHECK_THROWS_AS(parse_atomic_sequent("@(p) => p"), ParseError);
}

TEST_CASE("subformula closure") {
  Formula qr = parse_formula("q & r");
  FormulaSet closed = subformula_closure({qr});
  CHECK(closed.size() == 3);
  CHECK(closed.contains(qr));
  CHECK(closed.contains(Formula::atom("q")));
  CHECK(closed.contains(Formula::atom("r")));

  CHECK(subformula_closure({Formula::atom("p")}) == FormulaSet{Formula::atom("p")});

  FormulaSet big = subformula_closure({parse_formula("p -> (q | bot)")});
  CHECK(big.size() == 5);
  CHECK(big.contains(Formula::bottom()));
  CHECK(big.contains(parse_formula("q | bot")));
}

TEST_CASE("subformula closure is idempotent and monotone") {
  checks::Rng g(11);
  std::vector<Atom> atoms = {Atom::user("p"), Atom::user("q")};
  for (int i = 0; i < 200; ++i) {
    FormulaSet s{checks::random_formula(g, atoms, 5, true)};
    FormulaSet t = s.unite({checks::random_formula(g, atoms, 4, true)});
    FormulaSet cs = subformula_closure(s);
    CHECK(subformula_closure(cs) == cs);
    CHECK(cs.subset_of(subformula_closure(t)));
    CHECK(degree(cs) >= degree(s));
  }
}

TEST_CASE("degree counts connective occurrences") {
  CHECK(Formula::atom("p").degree() == 0);
  CHECK(parse_formula("p & (q -> bot)").degree() == 3);
  CHECK(degree(FormulaSet{Formula::atom("p"), parse_formula("p | q")}) == 1);
  CHECK(Formula::bottom().degree() == 1);
  FormulaSet atomic{Formula::atom("p"), Formula::atom("q")};
  CHECK(degree(atomic) == 0);
}

TEST_CASE("rendering round-trips") {
  CHECK(parse_formula("p & q -> r").text() == "p & q -> r");
  CHECK(Formula::bottom().text() == "bot");
  CHECK(parse_sequent("p => q").text() == "p => q");
  CHECK(parse_sequent("=>").text() == "=>");
  CHECK(parse_sequent(" p ,q=>  r").text() == "p, q => r");
  CHECK(parse_formula("(p | q) & r").text() == "(p | q) & r");
  CHECK(parse_formula("(p | q) | r").text() == "(p | q) | r");
}

TEST_CASE("round-trip property on random formulas") {
  checks::Rng g(7);
  std::vector<Atom> atoms = {Atom::user("p"), Atom::user("q"), Atom::user("r'"),
                             Atom::user("long_name")};
  for (int i = 0; i < 2000; ++i) {
    Formula f = checks::random_formula(g, atoms, 8, true);
    CHECK(parse_formula(f.text()) == f);
    Sequent s = checks::random_sequent(g, atoms, 8, 3, true);
    CHECK(parse_sequent(s.text()) == s);
  }
}

TEST_CASE("atom interning and ordering") {
  Atom a = Atom::user("p"), b = Atom::user("p");
  CHECK(a == b);
  CHECK(Atom::user("a") < Atom::user("b"));
  CHECK_THROWS_AS(Atom::user("@x"), Error);
  CHECK_THROWS_AS(Atom::user("bot"), Error);
  CHECK_THROWS_AS(Atom::user("1x"), Error);
  CHECK(Atom::from_name("@(q & r)").mapped());
  CHECK_FALSE(a.mapped());
}

TEST_CASE("latex output") {
  CHECK(latex(parse_formula("p & q -> bot")) == "p \\land q \\to \\bot");
  CHECK(latex(parse_sequent("p => q")) == "p \\Rightarrow q");
  CHECK(latex(Atom::from_name("@(q & r)")) == "p^{q \\land r}");
  CHECK(latex(Atom::user("a_b")) == "a\\_b");
}

TEST_SUITE_END();
