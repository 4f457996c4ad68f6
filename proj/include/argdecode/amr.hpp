#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace argdecode {

/// One instance in an AMR graph: "(w / want-01)" declares variable "w" with
/// concept "want-01". ":polarity -" on the node sets `negated`.
struct AmrNode {
  std::string variable;
  std::string concept_label;
  bool negated = false;

  auto operator<=>(const AmrNode&) const = default;
};

/// Edge target: either a reference to a declared node or a literal constant
/// (quoted string, numeral, or symbol).
struct AmrTarget {
  enum class Kind { NodeRef, Constant };
  Kind kind = Kind::NodeRef;
  std::string value;

  static AmrTarget node(std::string var) { return {Kind::NodeRef, std::move(var)}; }
  static AmrTarget constant(std::string text) { return {Kind::Constant, std::move(text)}; }
  bool is_node() const { return kind == Kind::NodeRef; }

  auto operator<=>(const AmrTarget&) const = default;
};

/// Role edge. Roles are stored lowercase with the leading ":" stripped, so
/// ":ARG0" and "arg0" unify.
struct AmrEdge {
  std::string role;
  std::string source;
  AmrTarget target;

  auto operator<=>(const AmrEdge&) const = default;
};

/// Rooted labelled DAG. Nodes are unique by variable; edge order is the parse
/// order and is preserved through serialization.
struct AmrGraph {
  std::string root;
  std::vector<AmrNode> nodes;  // declaration order
  std::vector<AmrEdge> edges;

  const AmrNode* find_node(const std::string& var) const;
};

enum class AmrErrorKind {
  EmptyInput,
  UnbalancedParens,
  BadToken,
  UndefinedVariable,
  DuplicateVariable,
  CycleDetected,
};

class AmrParseError : public std::runtime_error {
 public:
  AmrParseError(AmrErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  AmrErrorKind kind() const { return kind_; }

 private:
  AmrErrorKind kind_;
};

/// One invariant violation reported by validate().
struct AmrViolation {
  AmrErrorKind rule;
  std::string subject;  // offending variable or edge description
  std::string message;
};

/// Parses a single graph in PENMAN notation. Metadata lines starting with
/// "# ::" are skipped. Throws AmrParseError on malformed input.
AmrGraph parse_penman(const std::string& text);

/// Parses a blank-line-separated sequence of graphs.
std::vector<AmrGraph> parse_penman_many(const std::string& text);

/// Serializes back to PENMAN. parse_penman(serialize_penman(g)) is
/// graph-isomorphic to g.
std::string serialize_penman(const AmrGraph& graph);

/// Checks the AmrGraph invariants on an already-constructed graph. Empty
/// result means the graph is valid.
std::vector<AmrViolation> validate(const AmrGraph& graph);

/// Equality up to edge order.
bool graphs_isomorphic(const AmrGraph& a, const AmrGraph& b);

const char* amr_error_name(AmrErrorKind kind);

}  // namespace argdecode
