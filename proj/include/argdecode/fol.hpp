#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "argdecode/amr.hpp"
#include "argdecode/formula.hpp"

namespace argdecode {

struct FolTerm {
  enum class Kind { Var, Const };
  Kind kind;
  std::string text;

  static FolTerm var(std::string v) { return {Kind::Var, std::move(v)}; }
  static FolTerm constant(std::string c) { return {Kind::Const, std::move(c)}; }
  bool operator==(const FolTerm&) const = default;
};

/// First-order intermediate form: nested existential conjunctions of monadic
/// concept atoms and dyadic role atoms. Conjunction is n-ary here; the
/// grounded propositional form is binary.
class FolFormula {
 public:
  enum class Kind { Exists, And, Not, Monadic, Dyadic };

  static FolFormula exists(std::string var, FolFormula body);
  static FolFormula conj(std::vector<FolFormula> parts);
  static FolFormula neg(FolFormula body);
  static FolFormula monadic(std::string concept_label, std::string var);
  static FolFormula dyadic(std::string role, FolTerm l, FolTerm r);

  Kind kind() const { return node_->kind; }
  const std::string& var() const { return node_->text; }           // Exists, Monadic
  const std::string& predicate() const { return node_->pred; }     // Monadic, Dyadic
  const FolTerm& left_term() const { return node_->terms[0]; }     // Dyadic
  const FolTerm& right_term() const { return node_->terms[1]; }    // Dyadic
  const std::vector<FolFormula>& parts() const { return node_->children; }  // And
  const FolFormula& body() const { return node_->children[0]; }    // Exists, Not

 private:
  struct Node {
    Kind kind;
    std::string text;  // variable for Exists/Monadic
    std::string pred;  // predicate for Monadic/Dyadic
    std::vector<FolTerm> terms;
    std::vector<FolFormula> children;
  };

  explicit FolFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class GroundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concept label with any trailing sense suffix removed: "want-01" -> "want".
std::string concept_base(const std::string& concept_label);

/// Translates a valid AMR graph into the nested existential conjunction form:
/// each node contributes a monadic atom, each edge a dyadic atom inside the
/// source's scope, and a negated node wraps its own existential subformula
/// (incoming edge atom included) in a negation. Throws GroundingError on an
/// invalid graph.
FolFormula amr_to_fol(const AmrGraph& graph);

/// Grounds the existential variables: each variable becomes a constant named
/// after its concept (numeric suffix on repeats: boy, boy2, ...), monadic
/// atoms are deleted, quantifiers dropped. Empty conjunctions become ⊤.
AmrFormula ground_fol(const FolFormula& fol);

/// Optional pass: collapses ":mod" edges to leaf nodes into multi-word
/// constants, e.g. (i / insect :mod (l / large)) grounds as "large insect".
AmrGraph collapse_mod_constants(const AmrGraph& graph);

/// Convenience: validate + optional mod collapse + amr_to_fol + ground_fol.
AmrFormula graph_to_formula(const AmrGraph& graph, bool compound_constants = false);

std::string to_string(const FolFormula& f);

}  // namespace argdecode
