#include "argdecode/cnf.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace argdecode {
namespace {

// Negation normal form over {literal, and, or, true, false}.
struct Nnf {
  enum class Kind { Lit, And, Or, True, False };
  Kind kind = Kind::True;
  int lit = 0;  // DIMACS-style, valid when kind == Lit
  std::vector<std::shared_ptr<const Nnf>> parts;
};
using NnfPtr = std::shared_ptr<const Nnf>;

NnfPtr make_nnf(Nnf n) { return std::make_shared<const Nnf>(std::move(n)); }

NnfPtr to_nnf(const AbstractFormula& f, bool positive) {
  switch (f.kind()) {
    case AbstractFormula::Kind::Top:
      return make_nnf({positive ? Nnf::Kind::True : Nnf::Kind::False, 0, {}});
    case AbstractFormula::Kind::Leaf: {
      int v = f.value().index + 1;
      return make_nnf({Nnf::Kind::Lit, positive ? v : -v, {}});
    }
    case AbstractFormula::Kind::Not:
      return to_nnf(f.body(), !positive);
    case AbstractFormula::Kind::And: {
      Nnf n;
      n.kind = positive ? Nnf::Kind::And : Nnf::Kind::Or;
      n.parts = {to_nnf(f.lhs(), positive), to_nnf(f.rhs(), positive)};
      return make_nnf(std::move(n));
    }
  }
  throw std::logic_error("unreachable formula kind");
}

int max_letter(const NnfPtr& n) {
  if (n->kind == Nnf::Kind::Lit) return std::abs(n->lit);
  int m = 0;
  for (const auto& p : n->parts) m = std::max(m, max_letter(p));
  return m;
}

using Clause = std::vector<int>;

// Sorted literal set, or nullopt-equivalent empty marker for tautologies.
struct BuiltClause {
  Clause lits;
  bool tautology = false;
};

BuiltClause normalize(std::set<int> lits) {
  BuiltClause out;
  for (int l : lits) {
    if (lits.count(-l)) {
      out.tautology = true;
      return out;
    }
  }
  out.lits.assign(lits.begin(), lits.end());
  return out;
}

struct BudgetExceeded {};

// Distributes ∨ over ∧, producing a set of clauses. Throws BudgetExceeded if
// the intermediate clause count grows past the budget.
std::vector<std::set<int>> distribute(const NnfPtr& n, size_t budget) {
  switch (n->kind) {
    case Nnf::Kind::True:
      return {};
    case Nnf::Kind::False:
      return {{}};
    case Nnf::Kind::Lit:
      return {{n->lit}};
    case Nnf::Kind::And: {
      std::vector<std::set<int>> all;
      for (const auto& p : n->parts) {
        auto sub = distribute(p, budget);
        all.insert(all.end(), sub.begin(), sub.end());
        if (all.size() > budget) throw BudgetExceeded{};
      }
      return all;
    }
    case Nnf::Kind::Or: {
      // CNF(X ∨ Y) = ⋀ᵢⱼ (Cᵢ ∪ Dⱼ) for CNF(X) = ⋀Cᵢ, CNF(Y) = ⋀Dⱼ.
      std::vector<std::set<int>> acc = {{}};
      for (const auto& p : n->parts) {
        auto sub = distribute(p, budget);
        std::vector<std::set<int>> next;
        for (const auto& a : acc) {
          for (const auto& b : sub) {
            std::set<int> merged = a;
            merged.insert(b.begin(), b.end());
            next.push_back(std::move(merged));
            if (next.size() > budget) throw BudgetExceeded{};
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable nnf kind");
}

// Plaisted–Greenbaum encoding: NNF nodes occur only positively, so one
// implication direction per gate preserves satisfiability.
struct Tseitin {
  int next_var;
  std::vector<std::set<int>> clauses;

  // Returns a literal equivalent (for satisfiability) to the node.
  int encode(const NnfPtr& n) {
    switch (n->kind) {
      case Nnf::Kind::Lit:
        return n->lit;
      case Nnf::Kind::True: {
        int v = next_var++;
        clauses.push_back({v});
        return v;
      }
      case Nnf::Kind::False: {
        int v = next_var++;
        clauses.push_back({-v});
        return v;
      }
      case Nnf::Kind::And: {
        int v = next_var++;
        for (const auto& p : n->parts) clauses.push_back({-v, encode(p)});
        return v;
      }
      case Nnf::Kind::Or: {
        int v = next_var++;
        std::set<int> body = {-v};
        for (const auto& p : n->parts) body.insert(encode(p));
        clauses.push_back(std::move(body));
        return v;
      }
    }
    throw std::logic_error("unreachable nnf kind");
  }
};

Cnf finish(int num_letters, const std::vector<std::set<int>>& raw) {
  std::set<Clause> unique;
  for (const auto& s : raw) {
    BuiltClause c = normalize(s);
    if (!c.tautology) unique.insert(std::move(c.lits));
  }
  Cnf out;
  out.num_letters = num_letters;
  out.clauses.assign(unique.begin(), unique.end());
  return out;
}

}  // namespace

Cnf to_cnf(const AbstractFormula& formula, size_t clause_budget) {
  NnfPtr nnf = to_nnf(formula, true);
  int letters = max_letter(nnf);
  try {
    return finish(letters, distribute(nnf, clause_budget));
  } catch (const BudgetExceeded&) {
    Tseitin t{letters + 1, {}};
    int root = t.encode(nnf);
    t.clauses.push_back({root});
    return finish(t.next_var - 1, t.clauses);
  }
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_letters << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace argdecode
