#include <random>
#include <set>
#include <string>
#include <vector>

#include "argdecode/cnf.hpp"
#include "argdecode/formula.hpp"
#include "argdecode/reason.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace argdecode;

TEST_CASE("abstract formula print/parse round-trip on canonical strings") {
  const char* samples[] = {
      "x1",
      "~x2",
      "~~x1",
      "x1 & x2 & x3",
      "~(x1 & ~x2)",
      "true",
      "x1 & ~(x2 & true)",
      "~true",
  };
  for (const char* s : samples) CHECK(to_string(parse_abstract_formula(s)) == s);
}

TEST_CASE("amr formula print/parse round-trip, compound constants included") {
  const char* samples[] = {
      "arg0(want,boy) & arg1(want,go) & arg0(go,boy)",
      "arg0(want,boy) & ~(arg1(want,go) & arg0(go,boy))",
      "arg0(escape,large insect) & time(escape,recent)",
      "true",
  };
  for (const char* s : samples) CHECK(to_string(parse_amr_formula(s)) == s);
}

TEST_CASE("parsing is whitespace-insensitive and normalizes roles") {
  CHECK(to_string(parse_abstract_formula("  x1&x2  ")) == "x1 & x2");
  CHECK(to_string(parse_amr_formula("ARG0( want , boy )")) == "arg0(want,boy)");
  // left-nested input prints flat and re-parses to the same set of atoms
  AbstractFormula left = AbstractFormula::conj(
      AbstractFormula::conj(AbstractFormula::leaf(Letter{0}), AbstractFormula::leaf(Letter{1})),
      AbstractFormula::leaf(Letter{2}));
  CHECK(to_string(left) == "x1 & x2 & x3");
}

TEST_CASE("formula parse errors") {
  const char* bad_abstract[] = {"", "x1 &", "(x1", "x0", "foo", "x1 x2", "x"};
  for (const char* s : bad_abstract)
    CHECK_THROWS_AS(parse_abstract_formula(s), FormulaParseError);
  const char* bad_amr[] = {"arg0(a)", "arg0(,b)", "arg0(a,b", "arg0 a,b)"};
  for (const char* s : bad_amr)
    CHECK_THROWS_AS(parse_amr_formula(s), FormulaParseError);
}

TEST_CASE("structural equality and skeletons") {
  AbstractFormula a = parse_abstract_formula("x1 & ~(x2 & x3)");
  AbstractFormula b = parse_abstract_formula("x1 & ~(x2 & x3)");
  AbstractFormula c = parse_abstract_formula("x1 & ~(x3 & x2)");
  CHECK(a == b);
  CHECK(!(a == c));
  AmrFormula g = parse_amr_formula("arg0(a,b) & ~(arg1(c,d) & mod(e,f))");
  CHECK(skeleton_equal(a, g));
  CHECK(!skeleton_equal(parse_abstract_formula("x1"), g));
}

TEST_CASE("atoms collects the exact leaf set") {
  AmrFormula f = parse_amr_formula("arg0(a,b) & ~(arg0(a,b) & arg1(c,d)) & true");
  std::set<AmrAtom> got = atoms(f);
  REQUIRE(got.size() == 2);
  CHECK(got.count(AmrAtom{"arg0", "a", "b"}) == 1);
  CHECK(got.count(AmrAtom{"arg1", "c", "d"}) == 1);
}

TEST_CASE("conjoin folds right-nested and handles edge cases") {
  CHECK(to_string(conjoin(std::vector<AmrFormula>{})) == "true");
  AmrFormula one = parse_amr_formula("arg0(a,b)");
  CHECK(conjoin(std::vector<AmrFormula>{one}) == one);
  std::vector<AbstractFormula> parts = {
      parse_abstract_formula("x1"), parse_abstract_formula("x2"),
      parse_abstract_formula("x3")};
  CHECK(conjoin(parts) == parse_abstract_formula("x1 & x2 & x3"));
}

TEST_CASE("to_cnf on hand-checked inputs") {
  auto clauses = [](const char* text) {
    return to_cnf(parse_abstract_formula(text)).clauses;
  };
  using C = std::vector<std::vector<int>>;
  CHECK(clauses("x1") == C{{1}});
  CHECK(clauses("x1 & x2") == C{{1}, {2}});
  CHECK(clauses("~(x1 & x2)") == C{{-2, -1}});  // literals ascend numerically
  CHECK(clauses("~(x1 & ~x2)") == C{{-1, 2}});
  CHECK(clauses("~~x1") == C{{1}});
  // contradiction keeps both unit clauses, sorted
  CHECK(clauses("x1 & ~x1") == C{{-1}, {1}});
  // tautologous clause is dropped entirely
  CHECK(clauses("~(x1 & ~x1)") == C{});
  // duplicate clauses collapse
  CHECK(clauses("x1 & x1") == C{{1}});
  // ⊤ contributes nothing; ¬⊤ is the empty clause
  CHECK(clauses("true") == C{});
  CHECK(clauses("~true") == C{{}});
  CHECK(clauses("x1 & true") == C{{1}});
}

TEST_CASE("dimacs serialization") {
  Cnf cnf = to_cnf(parse_abstract_formula("~(x1 & ~x2)"));
  CHECK(to_dimacs(cnf) == "p cnf 2 1\n-1 2 0\n");
  Cnf empty = to_cnf(parse_abstract_formula("true"));
  CHECK(to_dimacs(empty) == "p cnf 0 0\n");
}

TEST_CASE("clause budget falls back to an equisatisfiable encoding") {
  // Or of three 2-letter conjunctions: distribution needs 8 clauses
  AbstractFormula f = AbstractFormula::neg(parse_abstract_formula(
      "~(x1 & x2) & ~(x3 & x4) & ~(x5 & x6)"));
  Cnf direct = to_cnf(f, 10000);
  CHECK(direct.num_letters == 6);
  CHECK(direct.clauses.size() == 8);
  Cnf encoded = to_cnf(f, 4);
  CHECK(encoded.num_letters > 6);  // auxiliary letters present
  CHECK(oracle::cnf_matches_formula(f, direct));
  CHECK(oracle::cnf_matches_formula(f, encoded));
  CHECK(sat(direct).has_value() == sat(encoded).has_value());
}

TEST_CASE("cnf conversion agrees with truth tables on random formulas") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 300; ++i) {
    AbstractFormula f = oracle::random_formula(rng, 6, 5);
    Cnf cnf = to_cnf(f);
    CAPTURE(to_string(f));
    CHECK(oracle::cnf_matches_formula(f, cnf));
    // tiny budget forces the fallback encoding on anything non-trivial
    Cnf encoded = to_cnf(f, 1);
    CHECK(oracle::tt_satisfiable(f) == sat(encoded).has_value());
  }
}
