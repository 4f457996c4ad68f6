#include "argdecode/formula.hpp"

#include <cctype>

#include "argdecode/util.hpp"

namespace argdecode {

namespace {

template <typename A>
void print_conjunct(const Formula<A>& f, std::string& out);

template <typename A>
void print(const Formula<A>& f, std::string& out) {
  using K = typename Formula<A>::Kind;
  switch (f.kind()) {
    case K::Top:
      out += "true";
      break;
    case K::Leaf:
      out += f.value().str();
      break;
    case K::Not:
      out += '~';
      if (f.body().kind() == K::And) {
        out += '(';
        print(f.body(), out);
        out += ')';
      } else {
        print(f.body(), out);
      }
      break;
    case K::And:
      print_conjunct(f.lhs(), out);
      out += " & ";
      print_conjunct(f.rhs(), out);
      break;
  }
}

// nested conjunctions display flat: a & b & c
template <typename A>
void print_conjunct(const Formula<A>& f, std::string& out) {
  print(f, out);
}

template <typename A>
class FormulaParser {
 public:
  using LeafFn = A (*)(FormulaParser&);

  FormulaParser(const std::string& text, LeafFn leaf_fn)
      : in_(text), pos_(0), leaf_fn_(leaf_fn) {}

  Formula<A> parse() {
    Formula<A> f = parse_formula();
    skip_space();
    if (pos_ < in_.size())
      fail("trailing content '" + in_.substr(pos_) + "'");
    return f;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw FormulaParseError("formula parse error: " + msg);
  }

  void skip_space() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < in_.size() ? in_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_space();
    size_t start = pos_;
    while (pos_ < in_.size() &&
           (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_' ||
            in_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) fail("expected identifier at '" + in_.substr(pos_, 8) + "'");
    return in_.substr(start, pos_ - start);
  }

  // argument text runs to the next ',' or ')'; inner spaces are kept so
  // compound constants like "large insect" survive
  std::string atom_arg(char stop1, char stop2) {
    size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] != stop1 && in_[pos_] != stop2) ++pos_;
    std::string out = trim(in_.substr(start, pos_ - start));
    if (out.empty()) fail("empty atom argument");
    return out;
  }

 private:
  Formula<A> parse_formula() {
    Formula<A> first = parse_term();
    if (peek() != '&') return first;
    consume('&');
    return Formula<A>::conj(first, parse_formula());
  }

  Formula<A> parse_term() {
    char c = peek();
    if (c == '~') {
      consume('~');
      return Formula<A>::neg(parse_term());
    }
    if (c == '(') {
      consume('(');
      Formula<A> inner = parse_formula();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == '\0') fail("unexpected end of input");
    if (match_true()) return Formula<A>::top();
    return Formula<A>::leaf(leaf_fn_(*this));
  }

  // "true" is the ⊤ constant unless it opens an atom like true(a,b)
  bool match_true() {
    skip_space();
    if (in_.compare(pos_, 4, "true") != 0) return false;
    size_t after = pos_ + 4;
    if (after < in_.size()) {
      char c = in_[after];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '(')
        return false;
    }
    pos_ = after;
    return true;
  }

  std::string in_;
  size_t pos_;
  LeafFn leaf_fn_;
};

AmrAtom parse_amr_leaf(FormulaParser<AmrAtom>& p) {
  std::string role = p.ident();
  if (!p.consume('(')) p.fail("expected '(' after role '" + role + "'");
  std::string left = p.atom_arg(',', ')');
  if (!p.consume(',')) p.fail("expected ',' in atom " + role + "(...)");
  std::string right = p.atom_arg(')', ')');
  if (!p.consume(')')) p.fail("expected ')' closing atom " + role + "(...)");
  return AmrAtom{to_lower(role), left, right};
}

Letter parse_letter_leaf(FormulaParser<Letter>& p) {
  std::string id = p.ident();
  if (id.size() < 2 || id[0] != 'x') p.fail("expected letter of the form xN, got '" + id + "'");
  int index = 0;
  for (size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i])))
      p.fail("expected letter of the form xN, got '" + id + "'");
    index = index * 10 + (id[i] - '0');
  }
  if (index < 1) p.fail("letter indices start at x1");
  return Letter{index - 1};
}

template <typename A>
Formula<A> parse_text(const std::string& text, typename FormulaParser<A>::LeafFn leaf_fn) {
  FormulaParser<A> p(text, leaf_fn);
  return p.parse();
}

}  // namespace

std::string to_string(const AmrFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const AbstractFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

AmrFormula parse_amr_formula(const std::string& text) {
  return parse_text<AmrAtom>(text, &parse_amr_leaf);
}

AbstractFormula parse_abstract_formula(const std::string& text) {
  return parse_text<Letter>(text, &parse_letter_leaf);
}

}  // namespace argdecode
