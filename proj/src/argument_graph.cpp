#include "argdecode/argument_graph.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "argdecode/amr.hpp"
#include "argdecode/fol.hpp"
#include "argdecode/relax.hpp"

namespace argdecode {

std::string arc_label_name(ArcLabel label) {
  switch (label) {
    case ArcLabel::Support: return "support";
    case ArcLabel::Contradict: return "contradict";
    case ArcLabel::Neutral: return "neutral";
  }
  throw std::logic_error("unknown arc label");
}

namespace {

std::string fmt_sim(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_con(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ArgumentArc make_arc(std::string from, std::string to,
                     const AmrFormula& bundle, const AmrFormula& claim,
                     const RunConfig& config, const ProviderSet& providers) {
  ScoreTable table = compute_scores(bundle, claim, *providers.embed,
                                    *providers.nli, providers.templates);
  RelationSet relations;
  relations.matches = matches_from_scores(table, config.tau_m);
  relations.contradicts =
      contradicts_from_scores(table, config.tau_c, config.seed);
  MappingResult mr =
      build_mapping({bundle, claim}, relations, config.drop_conflicts);
  Verdict verdict = classify(translate(bundle, mr.mapping),
                             translate(claim, mr.mapping),
                             config.clause_budget);

  ArgumentArc arc;
  arc.from = std::move(from);
  arc.to = std::move(to);
  switch (verdict.label) {
    case Label::Entailment: arc.label = ArcLabel::Support; break;
    case Label::Contradiction: arc.label = ArcLabel::Contradict; break;
    case Label::Neutral: arc.label = ArcLabel::Neutral; break;
  }
  arc.premise_inconsistent = verdict.premise_inconsistent;
  for (const MatchEdge& e : relations.matches)
    arc.annotations.push_back(e.claim_atom.str() + " ~ " +
                              e.premise_atom.str() + " (" +
                              fmt_sim(e.score) + ")");
  for (const ContradictEdge& e : relations.contradicts)
    arc.annotations.push_back(e.claim_atom.str() + " _|_ " +
                              e.premise_atom.str() + " (" +
                              fmt_con(e.con_score) + ")");
  return arc;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

ArgumentGraph build_argument_graph(const std::string& premise,
                                   const std::vector<std::string>& implicit,
                                   const std::string& claim,
                                   const RunConfig& config,
                                   const ProviderSet& providers,
                                   const std::map<std::string, std::string>& amr) {
  auto formula_for = [&](const std::string& sentence) {
    auto it = amr.find(sentence);
    std::string penman;
    if (it != amr.end()) {
      penman = it->second;
    } else if (providers.parse) {
      penman = providers.parse->parse(sentence);
    } else {
      throw DataError("no bundled AMR graph and no parse provider for \"" +
                      sentence + "\"");
    }
    return graph_to_formula(parse_penman(penman), config.compound_constants);
  };

  ArgumentGraph g;
  AmrFormula premise_formula = formula_for(premise);
  AmrFormula claim_formula = formula_for(claim);
  g.nodes.push_back({"premise", premise, to_string(premise_formula)});

  std::vector<AmrFormula> implicit_formulas;
  for (size_t i = 0; i < implicit.size(); ++i) {
    implicit_formulas.push_back(formula_for(implicit[i]));
    g.nodes.push_back({"implicit" + std::to_string(i + 1), implicit[i],
                       to_string(implicit_formulas.back())});
  }
  g.nodes.push_back({"claim", claim, to_string(claim_formula)});

  // The stated premise always gets its own arc, so the reader can see what
  // the claim looks like before any implicit sentence is added.
  g.arcs.push_back(make_arc("premise", "claim", premise_formula,
                            claim_formula, config, providers));

  for (size_t i = 0; i < implicit.size(); ++i) {
    AmrFormula bundle = conjoin(
        std::vector<AmrFormula>{premise_formula, implicit_formulas[i]});
    std::string bundle_id = "bundle" + std::to_string(i + 1);
    g.nodes.push_back({bundle_id, "", to_string(bundle)});
    g.compositions.emplace_back("premise", bundle_id);
    g.compositions.emplace_back("implicit" + std::to_string(i + 1), bundle_id);
    g.arcs.push_back(
        make_arc(bundle_id, "claim", bundle, claim_formula, config, providers));
  }
  return g;
}

std::string export_dot(const ArgumentGraph& graph) {
  std::ostringstream out;
  out << "digraph argument {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontsize=11];\n";
  for (const ArgumentNode& n : graph.nodes) {
    std::string label = dot_escape(n.formula);
    if (!n.text.empty()) label = dot_escape(n.text) + "\\n" + label;
    out << "  \"" << dot_escape(n.id) << "\" [label=\"" << label << "\"];\n";
  }
  for (const ArgumentArc& a : graph.arcs) {
    const char* color = a.label == ArcLabel::Support     ? "blue"
                        : a.label == ArcLabel::Contradict ? "red"
                                                          : "green";
    std::string label = arc_label_name(a.label);
    if (a.premise_inconsistent) label += "\\n(premise inconsistent)";
    out << "  \"" << dot_escape(a.from) << "\" -> \"" << dot_escape(a.to)
        << "\" [color=" << color << ", label=\"" << label << "\"";
    if (!a.annotations.empty()) {
      std::string tip;
      for (size_t i = 0; i < a.annotations.size(); ++i) {
        if (i) tip += "; ";
        tip += a.annotations[i];
      }
      out << ", tooltip=\"" << dot_escape(tip) << "\"";
    }
    out << "];\n";
  }
  for (const auto& [part, whole] : graph.compositions)
    out << "  \"" << dot_escape(part) << "\" -> \"" << dot_escape(whole)
        << "\" [color=black, arrowhead=none];\n";
  out << "}\n";
  return out.str();
}

}  // namespace argdecode
