#include "argdecode/reason.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

namespace argdecode {
namespace {

using Clauses = std::vector<std::vector<int>>;

struct Simplified {
  Clauses clauses;
  bool conflict = false;
};

// Sets `lit` true: drops satisfied clauses, strips the complement elsewhere.
Simplified set_literal(const Clauses& clauses, int lit) {
  Simplified out;
  for (const auto& c : clauses) {
    bool satisfied = false;
    std::vector<int> reduced;
    reduced.reserve(c.size());
    for (int l : c) {
      if (l == lit) {
        satisfied = true;
        break;
      }
      if (l != -lit) reduced.push_back(l);
    }
    if (satisfied) continue;
    if (reduced.empty()) {
      out.conflict = true;
      return out;
    }
    out.clauses.push_back(std::move(reduced));
  }
  return out;
}

void record(std::vector<int8_t>& assign, int lit) {
  assign[static_cast<size_t>(std::abs(lit)) - 1] = lit > 0 ? 1 : -1;
}

bool dpll(Clauses clauses, std::vector<int8_t>& assign) {
  for (const auto& c : clauses)
    if (c.empty()) return false;

  // Unit propagation.
  for (;;) {
    int unit = 0;
    for (const auto& c : clauses)
      if (c.size() == 1) {
        unit = c[0];
        break;
      }
    if (unit == 0) break;
    record(assign, unit);
    Simplified s = set_literal(clauses, unit);
    if (s.conflict) return false;
    clauses = std::move(s.clauses);
  }

  // Pure literal elimination. Removing clauses can expose new pure literals,
  // so loop to a fixed point.
  for (;;) {
    std::map<int, int> polarity;  // var -> bit 1 seen positive, bit 2 negative
    for (const auto& c : clauses)
      for (int l : c) polarity[std::abs(l)] |= l > 0 ? 1 : 2;
    int pure = 0;
    for (const auto& [var, mask] : polarity)
      if (mask != 3) {
        pure = mask == 1 ? var : -var;
        break;
      }
    if (pure == 0) break;
    record(assign, pure);
    Simplified s = set_literal(clauses, pure);
    if (s.conflict) return false;
    clauses = std::move(s.clauses);
  }

  if (clauses.empty()) return true;

  int lit = clauses[0][0];
  std::vector<int8_t> saved = assign;
  record(assign, lit);
  Simplified s = set_literal(clauses, lit);
  if (!s.conflict && dpll(std::move(s.clauses), assign)) return true;
  assign = std::move(saved);
  record(assign, -lit);
  s = set_literal(clauses, -lit);
  if (s.conflict) return false;
  return dpll(std::move(s.clauses), assign);
}

}  // namespace

std::optional<Model> sat(const Cnf& cnf) {
  std::vector<int8_t> assign(cnf.num_letters, 0);
  if (!dpll(cnf.clauses, assign)) return std::nullopt;
  Model model(cnf.num_letters, false);
  for (size_t v = 0; v < model.size(); ++v) model[v] = assign[v] > 0;
  return model;
}

bool satisfiable(const AbstractFormula& f, size_t clause_budget) {
  return sat(to_cnf(f, clause_budget)).has_value();
}

bool entails(const AbstractFormula& premise, const AbstractFormula& claim,
             size_t clause_budget) {
  return !satisfiable(AbstractFormula::conj(premise, AbstractFormula::neg(claim)),
                      clause_budget);
}

bool contradicts(const AbstractFormula& premise, const AbstractFormula& claim,
                 size_t clause_budget) {
  return !satisfiable(AbstractFormula::conj(premise, claim), clause_budget);
}

std::string label_name(Label label) {
  switch (label) {
    case Label::Entailment:
      return "Entailment";
    case Label::Contradiction:
      return "Contradiction";
    case Label::Neutral:
      return "Neutral";
  }
  throw std::logic_error("unreachable label");
}

Label parse_label(const std::string& name) {
  if (name == "Entailment") return Label::Entailment;
  if (name == "Contradiction") return Label::Contradiction;
  if (name == "Neutral") return Label::Neutral;
  throw std::invalid_argument("unknown label: " + name);
}

Verdict classify(const AbstractFormula& premise, const AbstractFormula& claim,
                 size_t clause_budget) {
  Verdict v;
  if (!satisfiable(premise, clause_budget)) {
    // An inconsistent premise entails and contradicts everything; report the
    // stronger relation and flag the degeneracy for the caller.
    v.label = Label::Contradiction;
    v.premise_inconsistent = true;
    return v;
  }
  if (contradicts(premise, claim, clause_budget))
    v.label = Label::Contradiction;
  else if (entails(premise, claim, clause_budget))
    v.label = Label::Entailment;
  else
    v.label = Label::Neutral;
  return v;
}

}  // namespace argdecode
