#pragma once

#include <optional>
#include <string>
#include <vector>

#include "argdecode/cnf.hpp"
#include "argdecode/formula.hpp"

namespace argdecode {

/// Satisfying assignment: model[v-1] is the value of DIMACS variable v.
using Model = std::vector<bool>;

/// DPLL with unit propagation and pure-literal elimination. Returns a model
/// if satisfiable, std::nullopt otherwise. Unassigned variables in the model
/// default to false.
std::optional<Model> sat(const Cnf& cnf);

bool satisfiable(const AbstractFormula& f, size_t clause_budget = 10000);

/// φ ⊨ ψ  ⇔  φ ∧ ¬ψ unsatisfiable.
bool entails(const AbstractFormula& premise, const AbstractFormula& claim,
             size_t clause_budget = 10000);

/// φ, ψ jointly unsatisfiable.
bool contradicts(const AbstractFormula& premise, const AbstractFormula& claim,
                 size_t clause_budget = 10000);

enum class Label { Entailment, Contradiction, Neutral };

std::string label_name(Label label);
Label parse_label(const std::string& name);

struct Verdict {
  Label label = Label::Neutral;
  /// True when the premise alone is unsatisfiable; the label is then
  /// Contradiction degenerately (an inconsistent premise entails everything
  /// and contradicts everything, and contradiction wins).
  bool premise_inconsistent = false;
};

Verdict classify(const AbstractFormula& premise, const AbstractFormula& claim,
                 size_t clause_budget = 10000);

}  // namespace argdecode
