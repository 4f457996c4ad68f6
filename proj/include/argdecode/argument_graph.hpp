#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "argdecode/pipeline.hpp"

namespace argdecode {

// Decoded argument structure: every implicit sentence is tried as an
// addition to the stated premise, and each resulting premise bundle gets an
// arc to the claim labelled with the verdict of the solver.

enum class ArcLabel { Support, Contradict, Neutral };

std::string arc_label_name(ArcLabel label);

struct ArgumentNode {
  std::string id;
  std::string text;     // sentence, or "" for composite nodes
  std::string formula;  // rendered premise/claim formula
};

struct ArgumentArc {
  std::string from;
  std::string to;
  ArcLabel label = ArcLabel::Neutral;
  // Human-readable record of the relaxation edges behind the verdict,
  // e.g. "arg0(escape,prey) ~ arg0(flee,insect) (0.90)".
  std::vector<std::string> annotations;
  bool premise_inconsistent = false;
};

struct ArgumentGraph {
  std::vector<ArgumentNode> nodes;
  std::vector<ArgumentArc> arcs;
  // Plain composition arrows: (part, whole) for premise -> bundle and
  // implicit -> bundle.
  std::vector<std::pair<std::string, std::string>> compositions;
};

// Builds the graph for one stated premise, a set of candidate implicit
// sentences and a claim.  `amr` maps sentences to PENMAN strings; sentences
// without an entry go through the parse provider.
ArgumentGraph build_argument_graph(const std::string& premise,
                                   const std::vector<std::string>& implicit,
                                   const std::string& claim,
                                   const RunConfig& config,
                                   const ProviderSet& providers,
                                   const std::map<std::string, std::string>& amr = {});

// Graphviz rendering: support arcs blue, contradiction arcs red, neutral
// arcs green, composition arrows black.
std::string export_dot(const ArgumentGraph& graph);

}  // namespace argdecode
