#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "argdecode/argument_graph.hpp"
#include "argdecode/cnf.hpp"
#include "argdecode/fol.hpp"
#include "argdecode/sweep.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace argdecode;

namespace {

ProviderSet providers_from(const std::vector<std::string>& fixture_paths) {
  std::shared_ptr<const StubFixtures> fixtures;
  if (!fixture_paths.empty()) {
    StubFixtures merged;
    for (const std::string& path : fixture_paths)
      merged.merge(StubFixtures::load(path));
    fixtures = std::make_shared<const StubFixtures>(std::move(merged));
  }
  return ProviderSet::stubs(fixtures);
}

RunConfig config_from(double tau_m, double tau_c, uint64_t seed,
                      bool compound_constants, bool drop_conflicts) {
  RunConfig c;
  c.tau_m = tau_m;
  c.tau_c = tau_c;
  c.seed = seed;
  c.compound_constants = compound_constants;
  c.drop_conflicts = drop_conflicts;
  return c;
}

BinaryInstance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BinaryInstance inst;
  inst.id = j.value("id", "py");
  inst.premise = j.at("premise").get<std::string>();
  inst.claim = j.at("claim").get<std::string>();
  for (const auto& s : j.value("implicit", nlohmann::json::array()))
    inst.implicit.push_back(s.get<std::string>());
  // items() must not be called on a temporary; it keeps a reference
  nlohmann::json amr = j.value("amr", nlohmann::json::object());
  for (const auto& [sentence, penman] : amr.items())
    inst.amr[sentence] = penman.get<std::string>();
  if (j.contains("gold")) inst.gold_entailment = j["gold"] == "Entailment";
  return inst;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AMR-based enthymeme decoding core";

  m.def(
      "penman_to_formula",
      [](const std::string& penman, bool compound_constants) {
        return to_string(graph_to_formula(parse_penman(penman),
                                          compound_constants));
      },
      py::arg("penman"), py::arg("compound_constants") = false,
      "Parse a PENMAN graph and render the grounded propositional formula.");

  m.def(
      "to_dimacs",
      [](const std::string& formula, size_t clause_budget) {
        return to_dimacs(to_cnf(parse_abstract_formula(formula),
                                clause_budget));
      },
      py::arg("formula"), py::arg("clause_budget") = size_t{10000},
      "CNF-convert a letter formula (x1 & ~x2 ...) and emit DIMACS.");

  m.def(
      "satisfiable",
      [](const std::string& f) {
        return satisfiable(parse_abstract_formula(f));
      },
      py::arg("formula"));

  m.def(
      "entails",
      [](const std::string& premise, const std::string& claim) {
        return entails(parse_abstract_formula(premise),
                       parse_abstract_formula(claim));
      },
      py::arg("premise"), py::arg("claim"));

  m.def(
      "contradicts",
      [](const std::string& premise, const std::string& claim) {
        return contradicts(parse_abstract_formula(premise),
                           parse_abstract_formula(claim));
      },
      py::arg("premise"), py::arg("claim"));

  m.def(
      "classify",
      [](const std::string& premise, const std::string& claim) {
        return label_name(classify(parse_abstract_formula(premise),
                                   parse_abstract_formula(claim))
                              .label);
      },
      py::arg("premise"), py::arg("claim"),
      "Three-way verdict: Entailment | Contradiction | Neutral.");

  m.def(
      "instantiate",
      [](const std::string& role, const std::string& left,
         const std::string& right) {
        return TemplateRegistry::builtin().instantiate({role, left, right});
      },
      py::arg("role"), py::arg("left"), py::arg("right"),
      "Render an atom as the sentence fed to the embedding/NLI providers.");

  m.def(
      "decode_json",
      [](const std::string& instance_json, double tau_m, double tau_c,
         uint64_t seed, bool compound_constants, bool drop_conflicts,
         const std::vector<std::string>& stub_fixtures) {
        RunConfig config = config_from(tau_m, tau_c, seed, compound_constants,
                                       drop_conflicts);
        InstanceResult result = run_instance(
            instance_from_json(instance_json), config,
            providers_from(stub_fixtures));
        return trace_to_json(result.trace);
      },
      py::arg("instance_json"), py::arg("tau_m") = 0.6,
      py::arg("tau_c") = 80.0, py::arg("seed") = uint64_t{0},
      py::arg("compound_constants") = false, py::arg("drop_conflicts") = false,
      py::arg("stub_fixtures") = std::vector<std::string>{},
      "Decode one instance (JSON with premise/claim/implicit/amr) to a "
      "trace JSON string. Uses stub providers, optionally fixture-backed.");

  m.def(
      "metrics_json",
      [](long tp, long fp, long fn, long tn, int errored) {
        ConfusionCounts counts;
        counts.tp = tp;
        counts.fp = fp;
        counts.fn = fn;
        counts.tn = tn;
        return report_to_json(compute_metrics(counts, errored));
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"),
      py::arg("errored") = 0,
      "Precision/recall/F1 for both classes plus accuracy, as JSON.");

  m.def(
      "argument_graph_dot",
      [](const std::string& premise, const std::vector<std::string>& implicit,
         const std::string& claim, const std::string& amr_json, double tau_m,
         double tau_c, uint64_t seed, bool compound_constants,
         bool drop_conflicts, const std::vector<std::string>& stub_fixtures) {
        std::map<std::string, std::string> amr;
        if (!amr_json.empty()) {
          nlohmann::json parsed = nlohmann::json::parse(amr_json);
          for (const auto& [sentence, penman] : parsed.items())
            amr[sentence] = penman.get<std::string>();
        }
        RunConfig config = config_from(tau_m, tau_c, seed, compound_constants,
                                       drop_conflicts);
        return export_dot(build_argument_graph(premise, implicit, claim,
                                               config,
                                               providers_from(stub_fixtures),
                                               amr));
      },
      py::arg("premise"), py::arg("implicit"), py::arg("claim"),
      py::arg("amr_json") = std::string{}, py::arg("tau_m") = 0.6,
      py::arg("tau_c") = 80.0, py::arg("seed") = uint64_t{0},
      py::arg("compound_constants") = false, py::arg("drop_conflicts") = false,
      py::arg("stub_fixtures") = std::vector<std::string>{},
      "Build the argument graph for one enthymeme and render it as DOT.");
}
