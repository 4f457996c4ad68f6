#include "argdecode/amr.hpp"

#include <map>
#include <set>
#include <sstream>

#include "argdecode/util.hpp"

namespace argdecode {

namespace {

enum class Tok { LParen, RParen, Slash, Role, Str, Atom, End };

struct Token {
  Tok type;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) : in_(strip_metadata(input)), pos_(0) {}

  Token next() {
    skip_space();
    if (pos_ >= in_.size()) return {Tok::End, ""};
    char c = in_[pos_];
    if (c == '(') { ++pos_; return {Tok::LParen, "("}; }
    if (c == ')') { ++pos_; return {Tok::RParen, ")"}; }
    if (c == '/') { ++pos_; return {Tok::Slash, "/"}; }
    if (c == '"') return lex_string();
    if (c == ':') return lex_bare(Tok::Role);
    return lex_bare(Tok::Atom);
  }

 private:
  // Metadata/comment lines ("# ::snt ...") carry no graph structure.
  static std::string strip_metadata(const std::string& input) {
    std::string out;
    for (const auto& line : split(input, '\n')) {
      if (trim(line).rfind('#', 0) == 0) continue;
      out += line;
      out += '\n';
    }
    return out;
  }

  void skip_space() {
    while (pos_ < in_.size() && (in_[pos_] == ' ' || in_[pos_] == '\t' ||
                                 in_[pos_] == '\n' || in_[pos_] == '\r'))
      ++pos_;
  }

  Token lex_string() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < in_.size() && in_[pos_] != '"') {
      if (in_[pos_] == '\\' && pos_ + 1 < in_.size()) ++pos_;
      out += in_[pos_++];
    }
    if (pos_ >= in_.size())
      throw AmrParseError(AmrErrorKind::BadToken, "unterminated string literal");
    ++pos_;  // closing quote
    return {Tok::Str, out};
  }

  Token lex_bare(Tok type) {
    size_t start = pos_;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' ||
          c == ')' || c == '/' || c == '"')
        break;
      ++pos_;
    }
    std::string text = in_.substr(start, pos_ - start);
    if (type == Tok::Role) text = text.substr(1);  // drop ':'
    if (text.empty())
      throw AmrParseError(AmrErrorKind::BadToken, "empty token at offset " + std::to_string(start));
    return {type, text};
  }

  std::string in_;
  size_t pos_;
};

// Bare single letter plus optional digits is the conventional AMR variable
// shape; an undeclared token of that shape is a dangling reference rather
// than a symbol constant.
bool variable_shaped(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

struct PendingEdge {
  std::string role;
  std::string source;
  std::string bare_target;  // resolved to NodeRef or Constant after parse
  size_t edge_index;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  AmrGraph parse() {
    if (cur_.type == Tok::End)
      throw AmrParseError(AmrErrorKind::EmptyInput, "empty input");
    graph_.root = parse_node();
    if (cur_.type != Tok::End)
      throw AmrParseError(AmrErrorKind::UnbalancedParens,
                          "trailing content after graph: '" + cur_.text + "'");
    resolve_bare_targets();
    check_cycles();
    return std::move(graph_);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok type, const char* what) {
    if (cur_.type != type) {
      if (type == Tok::RParen || cur_.type == Tok::End)
        throw AmrParseError(AmrErrorKind::UnbalancedParens,
                            std::string("expected ") + what + ", got '" + cur_.text + "'");
      throw AmrParseError(AmrErrorKind::BadToken,
                          std::string("expected ") + what + ", got '" + cur_.text + "'");
    }
  }

  // '(' var '/' concept relation* ')'
  std::string parse_node() {
    expect(Tok::LParen, "'('");
    advance();
    expect(Tok::Atom, "variable name");
    std::string var = cur_.text;
    advance();
    expect(Tok::Slash, "'/'");
    advance();
    expect(Tok::Atom, "concept");
    std::string concept_label = cur_.text;
    advance();

    if (declared_.count(var))
      throw AmrParseError(AmrErrorKind::DuplicateVariable, "duplicate variable '" + var + "'");
    declared_.insert(var);
    graph_.nodes.push_back({var, concept_label, false});
    size_t node_index = graph_.nodes.size() - 1;

    while (cur_.type == Tok::Role) {
      std::string role = to_lower(cur_.text);
      advance();
      if (role == "polarity" && cur_.type == Tok::Atom && cur_.text == "-") {
        graph_.nodes[node_index].negated = true;
        advance();
        continue;
      }
      if (cur_.type == Tok::LParen) {
        // reserve the slot first so edges stay in textual role order even
        // though the nested node is parsed before the target is known
        size_t slot = graph_.edges.size();
        graph_.edges.push_back({role, var, AmrTarget::node("")});
        graph_.edges[slot].target = AmrTarget::node(parse_node());
      } else if (cur_.type == Tok::Str) {
        graph_.edges.push_back({role, var, AmrTarget::constant(cur_.text)});
        advance();
      } else if (cur_.type == Tok::Atom) {
        // variable reference or symbol constant; resolved after the full
        // graph is read so forward references work
        graph_.edges.push_back({role, var, AmrTarget::constant(cur_.text)});
        pending_.push_back({role, var, cur_.text, graph_.edges.size() - 1});
        advance();
      } else {
        throw AmrParseError(AmrErrorKind::UnbalancedParens,
                            "missing argument for role :" + role);
      }
    }
    expect(Tok::RParen, "')'");
    advance();
    return var;
  }

  void resolve_bare_targets() {
    for (const auto& p : pending_) {
      if (declared_.count(p.bare_target)) {
        graph_.edges[p.edge_index].target = AmrTarget::node(p.bare_target);
      } else if (variable_shaped(p.bare_target)) {
        throw AmrParseError(AmrErrorKind::UndefinedVariable,
                            "reference to undeclared variable '" + p.bare_target + "'");
      }
      // otherwise it stays a symbol constant
    }
  }

  void check_cycles() {
    auto violations = validate(graph_);
    for (const auto& v : violations)
      if (v.rule == AmrErrorKind::CycleDetected)
        throw AmrParseError(AmrErrorKind::CycleDetected, v.message);
  }

  Lexer lex_;
  Token cur_;
  AmrGraph graph_;
  std::set<std::string> declared_;
  std::vector<PendingEdge> pending_;
};

bool needs_quoting(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s)
    if (c == ' ' || c == '(' || c == ')' || c == '/' || c == '"' || c == ':') return true;
  return false;
}

void serialize_node(const AmrGraph& g, const std::string& var,
                    std::set<std::string>& emitted, std::string& out) {
  const AmrNode* node = g.find_node(var);
  emitted.insert(var);
  out += '(' + var + " / " + node->concept_label;
  if (node->negated) out += " :polarity -";
  for (const auto& e : g.edges) {
    if (e.source != var) continue;
    out += " :" + e.role + ' ';
    if (e.target.is_node()) {
      if (emitted.count(e.target.value))
        out += e.target.value;
      else
        serialize_node(g, e.target.value, emitted, out);
    } else if (needs_quoting(e.target.value)) {
      out += '"' + e.target.value + '"';
    } else {
      out += e.target.value;
    }
  }
  out += ')';
}

}  // namespace

const AmrNode* AmrGraph::find_node(const std::string& var) const {
  for (const auto& n : nodes)
    if (n.variable == var) return &n;
  return nullptr;
}

AmrGraph parse_penman(const std::string& text) {
  if (trim(text).empty())
    throw AmrParseError(AmrErrorKind::EmptyInput, "empty input");
  return Parser(text).parse();
}

std::vector<AmrGraph> parse_penman_many(const std::string& text) {
  std::vector<AmrGraph> graphs;
  std::string chunk;
  auto flush = [&] {
    if (!trim(chunk).empty()) graphs.push_back(parse_penman(chunk));
    chunk.clear();
  };
  for (const auto& line : split(text, '\n')) {
    if (trim(line).empty())
      flush();
    else
      chunk += line + '\n';
  }
  flush();
  return graphs;
}

std::string serialize_penman(const AmrGraph& graph) {
  std::string out;
  std::set<std::string> emitted;
  serialize_node(graph, graph.root, emitted, out);
  return out;
}

std::vector<AmrViolation> validate(const AmrGraph& graph) {
  std::vector<AmrViolation> out;
  std::set<std::string> seen;
  for (const auto& n : graph.nodes) {
    if (!seen.insert(n.variable).second)
      out.push_back({AmrErrorKind::DuplicateVariable, n.variable,
                     "variable '" + n.variable + "' declared more than once"});
    if (n.concept_label.empty())
      out.push_back({AmrErrorKind::BadToken, n.variable,
                     "node '" + n.variable + "' has an empty concept"});
  }
  if (graph.find_node(graph.root) == nullptr) {
    out.push_back({AmrErrorKind::UndefinedVariable, graph.root,
                   "root '" + graph.root + "' is not a declared node"});
    return out;
  }
  for (const auto& e : graph.edges) {
    if (graph.find_node(e.source) == nullptr)
      out.push_back({AmrErrorKind::UndefinedVariable, e.source,
                     "edge :" + e.role + " has undeclared source '" + e.source + "'"});
    if (e.target.is_node() && graph.find_node(e.target.value) == nullptr)
      out.push_back({AmrErrorKind::UndefinedVariable, e.target.value,
                     "edge :" + e.role + " points to undeclared variable '" + e.target.value + "'"});
  }
  if (!out.empty()) return out;  // structural errors mask reachability/cycles

  // adjacency over node references only
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : graph.edges)
    if (e.target.is_node()) adj[e.source].push_back(e.target.value);

  // cycle check: iterative DFS with colors (0 unseen, 1 on stack, 2 done)
  std::map<std::string, int> color;
  std::vector<std::pair<std::string, size_t>> stack{{graph.root, 0}};
  color[graph.root] = 1;
  while (!stack.empty()) {
    auto& [var, idx] = stack.back();
    auto& next = adj[var];
    if (idx >= next.size()) {
      color[var] = 2;
      stack.pop_back();
      continue;
    }
    const std::string& child = next[idx++];
    if (color[child] == 1) {
      out.push_back({AmrErrorKind::CycleDetected, child,
                     "cycle through variable '" + child + "'"});
      return out;
    }
    if (color[child] == 0) {
      color[child] = 1;
      stack.emplace_back(child, 0);
    }
  }
  for (const auto& n : graph.nodes)
    if (color[n.variable] == 0)
      out.push_back({AmrErrorKind::UndefinedVariable, n.variable,
                     "node '" + n.variable + "' is not reachable from the root"});
  return out;
}

bool graphs_isomorphic(const AmrGraph& a, const AmrGraph& b) {
  if (a.root != b.root) return false;
  std::set<AmrNode> na(a.nodes.begin(), a.nodes.end());
  std::set<AmrNode> nb(b.nodes.begin(), b.nodes.end());
  if (na != nb) return false;
  std::multiset<AmrEdge> ea(a.edges.begin(), a.edges.end());
  std::multiset<AmrEdge> eb(b.edges.begin(), b.edges.end());
  return ea == eb;
}

const char* amr_error_name(AmrErrorKind kind) {
  switch (kind) {
    case AmrErrorKind::EmptyInput: return "EmptyInput";
    case AmrErrorKind::UnbalancedParens: return "UnbalancedParens";
    case AmrErrorKind::BadToken: return "BadToken";
    case AmrErrorKind::UndefinedVariable: return "UndefinedVariable";
    case AmrErrorKind::DuplicateVariable: return "DuplicateVariable";
    case AmrErrorKind::CycleDetected: return "CycleDetected";
  }
  return "Unknown";
}

}  // namespace argdecode
