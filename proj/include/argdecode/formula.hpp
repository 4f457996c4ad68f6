#pragma once

#include <compare>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace argdecode {

/// Ground dyadic predicate r(a,b). Ordering is lexicographic by
/// (role, left, right); that order is the canonical one used for atom sets,
/// deterministic tie-breaks, and letter assignment.
struct AmrAtom {
  std::string role;
  std::string left;
  std::string right;

  auto operator<=>(const AmrAtom&) const = default;
  std::string str() const { return role + "(" + left + "," + right + ")"; }
};

/// Indexed propositional letter; prints as x1, x2, ...
struct Letter {
  int index = 0;

  auto operator<=>(const Letter&) const = default;
  std::string str() const { return "x" + std::to_string(index + 1); }
};

/// Formula over leaves of type A, closed under conjunction and negation,
/// plus the constant ⊤. Immutable; nodes are shared.
template <typename A>
class Formula {
 public:
  enum class Kind { Leaf, And, Not, Top };

  static Formula leaf(A value) {
    return Formula(std::make_shared<const Node>(Node{Kind::Leaf, std::move(value), nullptr, nullptr}));
  }
  static Formula conj(Formula l, Formula r) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, A{}, l.node_, r.node_}));
  }
  static Formula neg(Formula body) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, A{}, body.node_, nullptr}));
  }
  static Formula top() {
    return Formula(std::make_shared<const Node>(Node{Kind::Top, A{}, nullptr, nullptr}));
  }

  Kind kind() const { return node_->kind; }
  const A& value() const { return node_->value; }
  Formula lhs() const { return Formula(node_->l); }
  Formula rhs() const { return Formula(node_->r); }
  Formula body() const { return Formula(node_->l); }

  bool operator==(const Formula& other) const { return equal(node_, other.node_); }

 private:
  struct Node {
    Kind kind;
    A value;
    std::shared_ptr<const Node> l, r;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal(const std::shared_ptr<const Node>& a, const std::shared_ptr<const Node>& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Top: return true;
      case Kind::Leaf: return a->value == b->value;
      case Kind::Not: return equal(a->l, b->l);
      case Kind::And: return equal(a->l, b->l) && equal(a->r, b->r);
    }
    return false;
  }

  std::shared_ptr<const Node> node_;
};

using AmrFormula = Formula<AmrAtom>;
using AbstractFormula = Formula<Letter>;

/// Exact set of leaves; ⊤ contributes nothing and ¬ adds no atoms.
template <typename A>
std::set<A> atoms(const Formula<A>& f) {
  std::set<A> out;
  collect_atoms(f, out);
  return out;
}

template <typename A>
void collect_atoms(const Formula<A>& f, std::set<A>& out) {
  switch (f.kind()) {
    case Formula<A>::Kind::Leaf: out.insert(f.value()); break;
    case Formula<A>::Kind::Not: collect_atoms(f.body(), out); break;
    case Formula<A>::Kind::And:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      break;
    case Formula<A>::Kind::Top: break;
  }
}

/// True when the two formulas have the same ∧/¬ tree shape, ignoring what
/// sits at the leaves.
template <typename A, typename B>
bool skeleton_equal(const Formula<A>& a, const Formula<B>& b) {
  using KA = typename Formula<A>::Kind;
  using KB = typename Formula<B>::Kind;
  if (static_cast<int>(a.kind()) != static_cast<int>(b.kind())) return false;
  switch (a.kind()) {
    case KA::Leaf: return b.kind() == KB::Leaf;
    case KA::Top: return true;
    case KA::Not: return skeleton_equal(a.body(), b.body());
    case KA::And: return skeleton_equal(a.lhs(), b.lhs()) && skeleton_equal(a.rhs(), b.rhs());
  }
  return false;
}

/// Folds a list of conjuncts into the internal binary right-nested form.
template <typename A>
Formula<A> conjoin(const std::vector<Formula<A>>& parts) {
  if (parts.empty()) return Formula<A>::top();
  Formula<A> out = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
    out = Formula<A>::conj(*it, out);
  return out;
}

class FormulaParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Textual syntax used in fixtures and CLI output: atoms as role(left,right),
// "&" for conjunction, "~" for negation, "true" for ⊤, letters as x1, x2, ...
// Conjunction displays flat; parentheses group.
std::string to_string(const AmrFormula& f);
std::string to_string(const AbstractFormula& f);
AmrFormula parse_amr_formula(const std::string& text);
AbstractFormula parse_abstract_formula(const std::string& text);

}  // namespace argdecode
