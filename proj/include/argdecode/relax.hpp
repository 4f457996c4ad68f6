#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argdecode/formula.hpp"
#include "argdecode/providers.hpp"

namespace argdecode {

/// Verbalization pattern for one role; [X] is replaced by the atom's left
/// argument, [Y] by its right.
struct Template {
  std::string role;
  std::string pattern;
};

struct TemplateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Role → template table with a generic fallback, so lookup is total.
class TemplateRegistry {
 public:
  /// The 29 built-in role templates.
  static TemplateRegistry builtin();
  /// Loads "role<TAB>pattern" lines ('#' comments, blank lines skipped) on
  /// top of the builtin set, overriding per role.
  static TemplateRegistry load(const std::string& path);

  /// Validates that the pattern contains [X] and [Y] exactly once each.
  void add(Template t);
  const Template* find(const std::string& role) const;
  size_t size() const { return templates_.size(); }

  /// The role's template (or the fallback "[Y] is the [R] of [X]." with [R]
  /// replaced by the role) instantiated with the atom's arguments.
  std::string instantiate(const AmrAtom& atom) const;

 private:
  std::map<std::string, Template> templates_;
};

/// α ≃ β: premise_atom is the claim atom's unique best match above τ_m.
struct MatchEdge {
  AmrAtom claim_atom;
  AmrAtom premise_atom;
  double score = 0.0;
};

/// α ⊥ β: the pair's NLI label is Con with con_score ≥ τ_c.
struct ContradictEdge {
  AmrAtom claim_atom;
  AmrAtom premise_atom;
  double con_score = 0.0;
};

struct RelationSet {
  std::vector<MatchEdge> matches;
  std::vector<ContradictEdge> contradicts;
};

/// Raw provider scores for one claim-atom/premise-atom pair. Similarity is
/// the cosine of the instantiated sentences' embeddings; NLI scores are
/// computed with the claim atom's sentence first. Thresholds are applied
/// later, so one provider pass serves a whole threshold sweep.
struct ScoredPair {
  AmrAtom claim_atom;
  AmrAtom premise_atom;
  double similarity = 0.0;
  NliScores nli;
};

struct ScoreTable {
  std::vector<ScoredPair> pairs;  // sorted by (claim_atom, premise_atom)
};

ScoreTable compute_scores(const AmrFormula& premise, const AmrFormula& claim,
                          EmbedProvider& embed, NliProvider& nli,
                          const TemplateRegistry& registry);

/// Per claim atom: the single premise atom with the highest similarity
/// strictly above τ_m; exact score ties go to the canonically smaller atom.
std::vector<MatchEdge> matches_from_scores(const ScoreTable& table,
                                           double tau_m);

/// Every pair whose seeded NLI label is Con with con ≥ τ_c.
std::vector<ContradictEdge> contradicts_from_scores(const ScoreTable& table,
                                                    double tau_c,
                                                    uint64_t seed);

std::vector<MatchEdge> compute_matches(const AmrFormula& premise,
                                       const AmrFormula& claim, double tau_m,
                                       EmbedProvider& embed,
                                       const TemplateRegistry& registry);

std::vector<ContradictEdge> compute_contradicts(
    const AmrFormula& premise, const AmrFormula& claim, double tau_c,
    NliProvider& nli, const TemplateRegistry& registry, uint64_t seed);

/// A ⊥ edge landed inside one ≃-class, or the ⊥ constraints form an odd
/// cycle; `details` renders the offending atoms and edges.
struct ConflictError : std::runtime_error {
  ConflictError(const std::string& message, std::vector<std::string> details_)
      : std::runtime_error(message), details(std::move(details_)) {}
  std::vector<std::string> details;
};

/// Signed letter: the literal x(index+1) or its negation.
struct SignedLetter {
  int index = 0;
  bool negated = false;

  auto operator<=>(const SignedLetter&) const = default;
  std::string str() const {
    return (negated ? "~x" : "x") + std::to_string(index + 1);
  }
};

/// The mapping g from ground atoms to abstract literals. Atoms in one merged
/// ≃-class share a literal; ⊥-related atoms carry the same letter with
/// opposite signs; everything else gets a fresh positive letter.
struct Mapping {
  std::map<AmrAtom, SignedLetter> assignment;
  int alphabet_size = 0;

  const SignedLetter& at(const AmrAtom& atom) const;
};

/// Union-find over ≃ edges, then 2-coloring of the class graph under ⊥
/// constraints. Letters are numbered by each component's canonically smallest
/// atom; within a ⊥-linked component the positive sign goes to the side
/// holding the canonically smallest premise-side atom. Throws ConflictError
/// on ≃/⊥ clashes and odd ⊥ cycles; with drop_conflicts, offending ⊥ edges
/// are skipped instead and reported in `dropped`.
struct MappingResult {
  Mapping mapping;
  std::vector<ContradictEdge> dropped;  // only with drop_conflicts
  std::vector<std::string> warnings;
};

MappingResult build_mapping(const std::vector<AmrFormula>& formulas,
                            const RelationSet& relations,
                            bool drop_conflicts = false);

struct UnmappedAtom : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Homomorphic replacement of atoms by their literals; ⊤ ↦ ⊤. A negative
/// literal under an outer ¬ is left as a double negation (CNF simplifies
/// it). Throws UnmappedAtom if the formula has an atom outside the mapping.
AbstractFormula translate(const AmrFormula& formula, const Mapping& mapping);

}  // namespace argdecode
