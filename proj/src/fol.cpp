#include "argdecode/fol.hpp"

#include <map>
#include <set>

namespace argdecode {

FolFormula FolFormula::exists(std::string var, FolFormula body) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::Exists, std::move(var), "", {}, {std::move(body)}}));
}
FolFormula FolFormula::conj(std::vector<FolFormula> parts) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::And, "", "", {}, std::move(parts)}));
}
FolFormula FolFormula::neg(FolFormula body) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::Not, "", "", {}, {std::move(body)}}));
}
FolFormula FolFormula::monadic(std::string concept_label, std::string var) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::Monadic, std::move(var), std::move(concept_label), {}, {}}));
}
FolFormula FolFormula::dyadic(std::string role, FolTerm l, FolTerm r) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::Dyadic, "", std::move(role), {std::move(l), std::move(r)}, {}}));
}

std::string concept_base(const std::string& concept_label) {
  size_t dash = concept_label.rfind('-');
  if (dash == std::string::npos || dash + 1 >= concept_label.size()) return concept_label;
  for (size_t i = dash + 1; i < concept_label.size(); ++i)
    if (concept_label[i] < '0' || concept_label[i] > '9') return concept_label;
  return concept_label.substr(0, dash);
}

namespace {

// An ":r-of" edge is the inverse of ":r": the atom is emitted with base role
// and swapped arguments, while traversal still follows the written edge.
FolFormula edge_atom(const std::string& role, FolTerm source, FolTerm target) {
  if (role.size() > 3 && role.compare(role.size() - 3, 3, "-of") == 0) {
    return FolFormula::dyadic(role.substr(0, role.size() - 3),
                              std::move(target), std::move(source));
  }
  return FolFormula::dyadic(role, std::move(source), std::move(target));
}

class FolBuilder {
 public:
  explicit FolBuilder(const AmrGraph& g) : g_(g) {}

  FolFormula build() {
    const AmrNode* root = g_.find_node(g_.root);
    FolFormula scope = translate_scope(*root);
    return root->negated ? FolFormula::neg(std::move(scope)) : std::move(scope);
  }

 private:
  // One positive scope: the node's existential plus the existentials of all
  // non-negated descendants declared here, over a flat conjunction. A negated
  // child starts its own scope, wrapped in Not with the incoming edge atom
  // inside (matching how :polarity scopes in the grounded form).
  FolFormula translate_scope(const AmrNode& node, const AmrEdge* incoming = nullptr) {
    std::vector<std::string> hoisted;
    std::vector<FolFormula> conjuncts;
    if (incoming)
      conjuncts.push_back(edge_atom(incoming->role, FolTerm::var(incoming->source),
                                    FolTerm::var(node.variable)));
    visited_.insert(node.variable);
    visit(node, hoisted, conjuncts);
    FolFormula body = conjuncts.size() == 1 ? std::move(conjuncts[0])
                                            : FolFormula::conj(std::move(conjuncts));
    for (auto it = hoisted.rbegin(); it != hoisted.rend(); ++it)
      body = FolFormula::exists(*it, std::move(body));
    return FolFormula::exists(node.variable, std::move(body));
  }

  void visit(const AmrNode& node, std::vector<std::string>& hoisted,
             std::vector<FolFormula>& conjuncts) {
    conjuncts.push_back(FolFormula::monadic(concept_base(node.concept_label), node.variable));
    for (const auto& e : g_.edges) {
      if (e.source != node.variable) continue;
      if (!e.target.is_node()) {
        conjuncts.push_back(edge_atom(e.role, FolTerm::var(node.variable),
                                      FolTerm::constant(e.target.value)));
        continue;
      }
      const AmrNode* child = g_.find_node(e.target.value);
      if (visited_.count(child->variable)) {  // re-entrant reference
        conjuncts.push_back(edge_atom(e.role, FolTerm::var(node.variable),
                                      FolTerm::var(child->variable)));
        continue;
      }
      if (child->negated) {
        conjuncts.push_back(FolFormula::neg(translate_scope(*child, &e)));
        continue;
      }
      visited_.insert(child->variable);
      hoisted.push_back(child->variable);
      conjuncts.push_back(edge_atom(e.role, FolTerm::var(node.variable),
                                    FolTerm::var(child->variable)));
      visit(*child, hoisted, conjuncts);
    }
  }

  const AmrGraph& g_;
  std::set<std::string> visited_;
};

class Grounder {
 public:
  AmrFormula ground(const FolFormula& f) {
    collect_concepts(f);
    assign_constants(f);
    auto parts = ground_parts(f);
    return parts.empty() ? AmrFormula::top() : conjoin(parts);
  }

 private:
  void collect_concepts(const FolFormula& f) {
    switch (f.kind()) {
      case FolFormula::Kind::Monadic:
        concepts_[f.var()] = f.predicate();
        break;
      case FolFormula::Kind::Exists:
      case FolFormula::Kind::Not:
        collect_concepts(f.body());
        break;
      case FolFormula::Kind::And:
        for (const auto& p : f.parts()) collect_concepts(p);
        break;
      case FolFormula::Kind::Dyadic:
        break;
    }
  }

  // constants follow declaration (Exists) order; repeats get boy2, boy3, ...
  void assign_constants(const FolFormula& f) {
    switch (f.kind()) {
      case FolFormula::Kind::Exists: {
        auto it = concepts_.find(f.var());
        if (it == concepts_.end())
          throw GroundingError("variable '" + f.var() + "' has no concept declaration");
        int n = ++uses_[it->second];
        constants_[f.var()] = n == 1 ? it->second : it->second + std::to_string(n);
        assign_constants(f.body());
        break;
      }
      case FolFormula::Kind::Not:
        assign_constants(f.body());
        break;
      case FolFormula::Kind::And:
        for (const auto& p : f.parts()) assign_constants(p);
        break;
      default:
        break;
    }
  }

  std::string resolve(const FolTerm& t) const {
    if (t.kind == FolTerm::Kind::Const) return t.text;
    auto it = constants_.find(t.text);
    if (it == constants_.end())
      throw GroundingError("unbound variable '" + t.text + "' in dyadic atom");
    return it->second;
  }

  std::vector<AmrFormula> ground_parts(const FolFormula& f) {
    std::vector<AmrFormula> out;
    switch (f.kind()) {
      case FolFormula::Kind::Exists:
        return ground_parts(f.body());
      case FolFormula::Kind::And:
        for (const auto& p : f.parts()) {
          auto sub = ground_parts(p);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      case FolFormula::Kind::Not: {
        // a body of only monadic atoms grounds to ⊤, keeping the negation
        out.push_back(AmrFormula::neg(conjoin(ground_parts(f.body()))));
        return out;
      }
      case FolFormula::Kind::Monadic:
        return out;  // redundant after grounding
      case FolFormula::Kind::Dyadic:
        out.push_back(AmrFormula::leaf(
            AmrAtom{f.predicate(), resolve(f.left_term()), resolve(f.right_term())}));
        return out;
    }
    return out;
  }

  std::map<std::string, std::string> concepts_;   // var -> concept base
  std::map<std::string, std::string> constants_;  // var -> ground constant
  std::map<std::string, int> uses_;               // concept base -> count
};

}  // namespace

FolFormula amr_to_fol(const AmrGraph& graph) {
  auto violations = validate(graph);
  if (!violations.empty())
    throw GroundingError("invalid graph: " + violations.front().message);
  return FolBuilder(graph).build();
}

AmrFormula ground_fol(const FolFormula& fol) { return Grounder().ground(fol); }

AmrGraph collapse_mod_constants(const AmrGraph& graph) {
  std::map<std::string, int> in_degree;
  std::map<std::string, int> out_degree;
  for (const auto& e : graph.edges) {
    ++out_degree[e.source];
    if (e.target.is_node()) ++in_degree[e.target.value];
  }

  AmrGraph out;
  out.root = graph.root;
  std::set<std::string> removed;
  std::map<std::string, std::string> prefix;  // var -> accumulated modifiers
  std::vector<AmrEdge> kept_edges;
  for (const auto& e : graph.edges) {
    const AmrNode* child = e.target.is_node() ? graph.find_node(e.target.value) : nullptr;
    bool collapsible = e.role == "mod" && child != nullptr && !child->negated &&
                       child->variable != graph.root && out_degree[child->variable] == 0 &&
                       in_degree[child->variable] == 1;
    if (collapsible) {
      std::string& p = prefix[e.source];
      p = concept_base(child->concept_label) + (p.empty() ? "" : " " + p);
      removed.insert(child->variable);
    } else {
      kept_edges.push_back(e);
    }
  }
  for (const auto& n : graph.nodes) {
    if (removed.count(n.variable)) continue;
    AmrNode copy = n;
    auto it = prefix.find(n.variable);
    if (it != prefix.end()) copy.concept_label = it->second + " " + n.concept_label;
    out.nodes.push_back(std::move(copy));
  }
  out.edges = std::move(kept_edges);
  return out;
}

AmrFormula graph_to_formula(const AmrGraph& graph, bool compound_constants) {
  if (compound_constants) return ground_fol(amr_to_fol(collapse_mod_constants(graph)));
  return ground_fol(amr_to_fol(graph));
}

namespace {

void print_fol(const FolFormula& f, std::string& out) {
  switch (f.kind()) {
    case FolFormula::Kind::Exists:
      out += "exists " + f.var() + " (";
      print_fol(f.body(), out);
      out += ')';
      break;
    case FolFormula::Kind::And:
      for (size_t i = 0; i < f.parts().size(); ++i) {
        if (i) out += " & ";
        print_fol(f.parts()[i], out);
      }
      break;
    case FolFormula::Kind::Not:
      out += '~';
      if (f.body().kind() == FolFormula::Kind::And) {
        out += '(';
        print_fol(f.body(), out);
        out += ')';
      } else {
        print_fol(f.body(), out);
      }
      break;
    case FolFormula::Kind::Monadic:
      out += f.predicate() + "(" + f.var() + ")";
      break;
    case FolFormula::Kind::Dyadic:
      out += f.predicate() + "(" + f.left_term().text + "," + f.right_term().text + ")";
      break;
  }
}

}  // namespace

std::string to_string(const FolFormula& f) {
  std::string out;
  print_fol(f, out);
  return out;
}

}  // namespace argdecode
