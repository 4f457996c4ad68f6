#include "argdecode/relax.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "argdecode/util.hpp"

namespace argdecode {

namespace {

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

void replace_once(std::string& text, const std::string& from,
                  const std::string& to) {
  size_t pos = text.find(from);
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
}

constexpr const char* kFallbackPattern = "[Y] is the [R] of [X].";

}  // namespace

void TemplateRegistry::add(Template t) {
  if (t.role.empty()) throw TemplateError("template with empty role");
  if (count_occurrences(t.pattern, "[X]") != 1 ||
      count_occurrences(t.pattern, "[Y]") != 1) {
    throw TemplateError("template for role \"" + t.role +
                        "\" must contain [X] and [Y] exactly once: " +
                        t.pattern);
  }
  templates_[t.role] = std::move(t);
}

const Template* TemplateRegistry::find(const std::string& role) const {
  auto it = templates_.find(role);
  return it == templates_.end() ? nullptr : &it->second;
}

std::string TemplateRegistry::instantiate(const AmrAtom& atom) const {
  std::string pattern;
  if (const Template* t = find(atom.role)) {
    pattern = t->pattern;
  } else {
    pattern = kFallbackPattern;
    replace_once(pattern, "[R]", atom.role);
  }
  replace_once(pattern, "[X]", atom.left);
  replace_once(pattern, "[Y]", atom.right);
  return pattern;
}

TemplateRegistry TemplateRegistry::builtin() {
  TemplateRegistry r;
  static const Template kDefaults[] = {
      {"arg0", "[Y] is the agent performing action [X]."},
      {"arg1", "[Y] is the object involved in action [X]."},
      {"arg2", "[Y] is the second object involved in action [X]."},
      {"arg3", "[Y] is the third object involved in action [X]."},
      {"arg4", "[Y] is the fourth object involved in action [X]."},
      {"arg5", "[Y] is the fifth object involved in action [X]."},
      {"location", "[Y] is the location of action [X]."},
      {"time", "[Y] is when action [X] takes place."},
      {"purpose", "[Y] is the purpose of action [X]."},
      {"manner", "[Y] is the manner of action [X]."},
      {"mod", "[Y] is a modifier of entity [X]."},
      {"degree", "[Y] is the degree of entity [X]."},
      {"instrument", "[Y] is the instrument of action [X]."},
      {"destination", "[Y] is the destination of action [X]."},
      {"source", "[Y] is the source of action [X]."},
      {"topic", "[Y] is the topic of action [X]."},
      {"beneficiary", "[Y] is the beneficiary of action [X]."},
      {"accompanier", "[Y] is the accompanier of action [X]."},
      {"condition", "[Y] is the condition of action [X]."},
      {"concession", "[Y] is the concession of action [X]."},
      {"cause", "[Y] is the cause of action [X]."},
      {"part", "[Y] is a part of entity [X]."},
      {"poss", "[Y] is the possessor of entity [X]."},
      {"domain", "[Y] is the domain of entity [X]."},
      {"example", "[Y] is an example of entity [X]."},
      {"frequency", "[Y] is the frequency of action [X]."},
      {"duration", "[Y] is the duration of action [X]."},
      {"extent", "[Y] is the extent of action [X]."},
      {"medium", "[Y] is the medium of action [X]."},
  };
  for (const Template& t : kDefaults) r.add(t);
  return r;
}

TemplateRegistry TemplateRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TemplateError("cannot open template file: " + path);
  TemplateRegistry r = builtin();
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw TemplateError(path + ":" + std::to_string(lineno) +
                          ": expected role<TAB>pattern");
    }
    r.add({trim(line.substr(0, tab)), trim(line.substr(tab + 1))});
  }
  return r;
}

namespace {

// Instantiated sentence per atom, with each distinct sentence embedded once.
struct SentenceTable {
  std::map<AmrAtom, std::string> sentence;
  std::map<std::string, EmbeddingVector> vectors;
};

SentenceTable verbalize(const std::set<AmrAtom>& premise_atoms,
                        const std::set<AmrAtom>& claim_atoms,
                        const TemplateRegistry& registry,
                        EmbedProvider* embed) {
  SentenceTable t;
  auto visit = [&](const AmrAtom& a) {
    std::string s = registry.instantiate(a);
    if (embed && !t.vectors.count(s)) t.vectors[s] = embed->embed(s);
    t.sentence[a] = std::move(s);
  };
  for (const AmrAtom& a : premise_atoms) visit(a);
  for (const AmrAtom& a : claim_atoms) visit(a);
  return t;
}

}  // namespace

ScoreTable compute_scores(const AmrFormula& premise, const AmrFormula& claim,
                          EmbedProvider& embed, NliProvider& nli,
                          const TemplateRegistry& registry) {
  std::set<AmrAtom> p_atoms = atoms(premise);
  std::set<AmrAtom> c_atoms = atoms(claim);
  SentenceTable st = verbalize(p_atoms, c_atoms, registry, &embed);
  ScoreTable table;
  for (const AmrAtom& ca : c_atoms) {
    const std::string& cs = st.sentence.at(ca);
    for (const AmrAtom& pa : p_atoms) {
      const std::string& ps = st.sentence.at(pa);
      ScoredPair pair{ca, pa, 0.0, {}};
      pair.similarity = cosine_similarity(st.vectors.at(cs), st.vectors.at(ps));
      pair.nli = nli.score(cs, ps);  // claim sentence first
      table.pairs.push_back(std::move(pair));
    }
  }
  return table;
}

std::vector<MatchEdge> matches_from_scores(const ScoreTable& table,
                                           double tau_m) {
  std::vector<MatchEdge> out;
  // Pairs are grouped by claim atom, premise atoms in canonical order, so a
  // strict > keeps the canonically smaller atom on exact score ties.
  size_t i = 0;
  while (i < table.pairs.size()) {
    const AmrAtom& ca = table.pairs[i].claim_atom;
    const ScoredPair* best = nullptr;
    for (; i < table.pairs.size() && table.pairs[i].claim_atom == ca; ++i) {
      const ScoredPair& p = table.pairs[i];
      if (p.similarity > tau_m && (!best || p.similarity > best->similarity))
        best = &p;
    }
    if (best) out.push_back({ca, best->premise_atom, best->similarity});
  }
  return out;
}

std::vector<ContradictEdge> contradicts_from_scores(const ScoreTable& table,
                                                    double tau_c,
                                                    uint64_t seed) {
  std::vector<ContradictEdge> out;
  for (const ScoredPair& p : table.pairs) {
    if (nli_label(p.nli, seed) == NliOutcome::Con && p.nli.con >= tau_c)
      out.push_back({p.claim_atom, p.premise_atom, p.nli.con});
  }
  return out;
}

std::vector<MatchEdge> compute_matches(const AmrFormula& premise,
                                       const AmrFormula& claim, double tau_m,
                                       EmbedProvider& embed,
                                       const TemplateRegistry& registry) {
  std::set<AmrAtom> p_atoms = atoms(premise);
  std::set<AmrAtom> c_atoms = atoms(claim);
  SentenceTable st = verbalize(p_atoms, c_atoms, registry, &embed);
  ScoreTable table;
  for (const AmrAtom& ca : c_atoms)
    for (const AmrAtom& pa : p_atoms) {
      table.pairs.push_back(
          {ca, pa,
           cosine_similarity(st.vectors.at(st.sentence.at(ca)),
                             st.vectors.at(st.sentence.at(pa))),
           {}});
    }
  return matches_from_scores(table, tau_m);
}

std::vector<ContradictEdge> compute_contradicts(
    const AmrFormula& premise, const AmrFormula& claim, double tau_c,
    NliProvider& nli, const TemplateRegistry& registry, uint64_t seed) {
  std::set<AmrAtom> p_atoms = atoms(premise);
  std::set<AmrAtom> c_atoms = atoms(claim);
  SentenceTable st = verbalize(p_atoms, c_atoms, registry, nullptr);
  ScoreTable table;
  for (const AmrAtom& ca : c_atoms)
    for (const AmrAtom& pa : p_atoms) {
      table.pairs.push_back(
          {ca, pa, 0.0, nli.score(st.sentence.at(ca), st.sentence.at(pa))});
    }
  return contradicts_from_scores(table, tau_c, seed);
}

const SignedLetter& Mapping::at(const AmrAtom& atom) const {
  auto it = assignment.find(atom);
  if (it == assignment.end())
    throw UnmappedAtom("atom not in mapping: " + atom.str());
  return it->second;
}

namespace {

// Union-find where every element carries a parity (0 same sign as root,
// 1 opposite). ≃ edges unite with parity 0, ⊥ edges with parity 1.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<size_t, int> find(size_t i) {
    if (parent_[i] == i) return {i, 0};
    auto [root, p] = find(parent_[i]);
    parent_[i] = root;
    parity_[i] = static_cast<char>(parity_[i] ^ p);
    return {root, parity_[i]};
  }

  // False iff already joined with the other parity.
  bool unite(size_t a, size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent_[rb] = ra;
    parity_[rb] = static_cast<char>(pa ^ pb ^ rel);
    return true;
  }

 private:
  std::vector<size_t> parent_;
  std::vector<char> parity_;
};

}  // namespace

MappingResult build_mapping(const std::vector<AmrFormula>& formulas,
                            const RelationSet& relations,
                            bool drop_conflicts) {
  std::set<AmrAtom> universe;
  for (const AmrFormula& f : formulas) {
    std::set<AmrAtom> a = atoms(f);
    universe.insert(a.begin(), a.end());
  }
  for (const MatchEdge& m : relations.matches) {
    universe.insert(m.claim_atom);
    universe.insert(m.premise_atom);
  }
  for (const ContradictEdge& c : relations.contradicts) {
    universe.insert(c.claim_atom);
    universe.insert(c.premise_atom);
  }

  std::vector<AmrAtom> order(universe.begin(), universe.end());
  std::map<AmrAtom, size_t> index;
  for (size_t i = 0; i < order.size(); ++i) index[order[i]] = i;

  ParityUnionFind uf(order.size());
  ParityUnionFind sim_only(order.size());  // tracks pure ≃-classes for errors
  for (const MatchEdge& m : relations.matches) {
    uf.unite(index.at(m.claim_atom), index.at(m.premise_atom), 0);
    sim_only.unite(index.at(m.claim_atom), index.at(m.premise_atom), 0);
  }

  std::vector<ContradictEdge> contras = relations.contradicts;
  std::sort(contras.begin(), contras.end(),
            [](const ContradictEdge& a, const ContradictEdge& b) {
              return std::tie(a.claim_atom, a.premise_atom) <
                     std::tie(b.claim_atom, b.premise_atom);
            });

  MappingResult result;
  std::vector<ContradictEdge> kept;
  for (const ContradictEdge& c : contras) {
    size_t a = index.at(c.claim_atom), b = index.at(c.premise_atom);
    if (uf.unite(a, b, 1)) {
      kept.push_back(c);
      continue;
    }
    bool same_class = sim_only.find(a).first == sim_only.find(b).first;
    std::string reason = same_class
                             ? "contradiction edge inside one similarity class"
                             : "odd cycle of contradiction constraints";
    std::vector<std::string> details = {
        c.claim_atom.str() + " \xE2\x8A\xA5 " + c.premise_atom.str(), reason};
    if (!drop_conflicts) {
      std::string message =
          "conflicting relation set: " + reason + " at " + details[0];
      throw ConflictError(message, std::move(details));
    }
    result.dropped.push_back(c);
    result.warnings.push_back("dropped " + details[0] + " (" + reason + ")");
  }

  // Letters in order of each component's canonically smallest atom. `order`
  // is sorted, so first-seen roots enumerate components in that order.
  std::map<size_t, int> letter_of_root;
  for (size_t i = 0; i < order.size(); ++i) {
    size_t root = uf.find(i).first;
    if (!letter_of_root.count(root)) {
      int next = static_cast<int>(letter_of_root.size());
      letter_of_root[root] = next;
    }
  }

  // Within a ⊥-linked component, the positive sign goes to the side holding
  // the canonically smallest premise-side atom, matching the convention that
  // premise atoms keep their polarity and contradicted claim atoms flip.
  std::map<size_t, int> positive_parity;  // root → parity that prints positive
  std::map<size_t, AmrAtom> smallest_premise;
  for (const ContradictEdge& c : kept) {
    size_t b = index.at(c.premise_atom);
    size_t root = uf.find(b).first;
    auto it = smallest_premise.find(root);
    if (it == smallest_premise.end() || c.premise_atom < it->second)
      smallest_premise.insert_or_assign(root, c.premise_atom);
  }
  for (const auto& [root, atom] : smallest_premise)
    positive_parity[root] = uf.find(index.at(atom)).second;

  for (size_t i = 0; i < order.size(); ++i) {
    auto [root, parity] = uf.find(i);
    int pos = positive_parity.count(root) ? positive_parity[root] : 0;
    result.mapping.assignment[order[i]] =
        SignedLetter{letter_of_root.at(root), parity != pos};
  }
  result.mapping.alphabet_size = static_cast<int>(letter_of_root.size());
  return result;
}

AbstractFormula translate(const AmrFormula& formula, const Mapping& mapping) {
  switch (formula.kind()) {
    case AmrFormula::Kind::Top:
      return AbstractFormula::top();
    case AmrFormula::Kind::Leaf: {
      const SignedLetter& lit = mapping.at(formula.value());
      AbstractFormula leaf = AbstractFormula::leaf(Letter{lit.index});
      return lit.negated ? AbstractFormula::neg(leaf) : leaf;
    }
    case AmrFormula::Kind::Not:
      return AbstractFormula::neg(translate(formula.body(), mapping));
    case AmrFormula::Kind::And:
      return AbstractFormula::conj(translate(formula.lhs(), mapping),
                                   translate(formula.rhs(), mapping));
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace argdecode
