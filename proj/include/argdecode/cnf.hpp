#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "argdecode/formula.hpp"

namespace argdecode {

/// Clause set. A literal is +v for letter v-1 true, -v for letter v-1 false
/// (DIMACS convention). Clauses are sorted and deduplicated; tautological
/// clauses are dropped.
struct Cnf {
  int num_letters = 0;
  std::vector<std::vector<int>> clauses;
};

/// Converts ∧/¬ formulas to CNF: double-negation elimination and De Morgan
/// into negation normal form, then distribution of ∨ over ∧. If distribution
/// would exceed `clause_budget` clauses, falls back to a Tseitin-style
/// equisatisfiable encoding with fresh letters (only satisfiability is ever
/// queried downstream). ⊤ yields the empty clause set.
Cnf to_cnf(const AbstractFormula& formula, size_t clause_budget = 10000);

std::string to_dimacs(const Cnf& cnf);

}  // namespace argdecode
