#include "argdecode/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "argdecode/amr.hpp"
#include "argdecode/cnf.hpp"
#include "argdecode/fol.hpp"
#include "argdecode/util.hpp"
#include "json.hpp"

namespace argdecode {

using nlohmann::json;

ProviderSet ProviderSet::stubs(std::shared_ptr<const StubFixtures> fixtures) {
  ProviderSet p;
  p.embed = std::make_shared<StubEmbedProvider>(fixtures);
  p.nli = std::make_shared<StubNliProvider>(fixtures);
  p.gen = std::make_shared<StubGenProvider>(fixtures);
  p.parse = std::make_shared<StubParseProvider>(fixtures);
  return p;
}

ProviderSet ProviderSet::cached(std::shared_ptr<DiskCache> cache) const {
  ProviderSet p = *this;
  if (p.embed) p.embed = std::make_shared<CachedEmbedProvider>(p.embed, cache);
  if (p.nli) p.nli = std::make_shared<CachedNliProvider>(p.nli, cache);
  if (p.gen) p.gen = std::make_shared<CachedGenProvider>(p.gen, cache);
  if (p.parse) p.parse = std::make_shared<CachedParseProvider>(p.parse, cache);
  return p;
}

namespace {

std::string penman_for(const BinaryInstance& instance,
                       const ProviderSet& providers,
                       const std::string& sentence) {
  auto it = instance.amr.find(sentence);
  if (it != instance.amr.end()) return it->second;
  if (providers.parse) return providers.parse->parse(sentence);
  throw DataError("no bundled AMR graph and no parse provider for \"" +
                  sentence + "\"");
}

std::string sanitize_filename(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void dump_dimacs(const RunConfig& config, const std::string& id,
                 const AbstractFormula& premise, const AbstractFormula& claim) {
  namespace fs = std::filesystem;
  fs::create_directories(config.dimacs_dir);
  std::string base = sanitize_filename(id);
  Cnf entail = to_cnf(
      AbstractFormula::conj(premise, AbstractFormula::neg(claim)),
      config.clause_budget);
  Cnf contra = to_cnf(AbstractFormula::conj(premise, claim),
                      config.clause_budget);
  std::ofstream(fs::path(config.dimacs_dir) / (base + ".entail.cnf"))
      << to_dimacs(entail);
  std::ofstream(fs::path(config.dimacs_dir) / (base + ".contra.cnf"))
      << to_dimacs(contra);
}

}  // namespace

InstanceResult run_instance(const BinaryInstance& instance,
                            const RunConfig& config,
                            const ProviderSet& providers) {
  InstanceResult result;
  result.outcome.gold_entailment = instance.gold_entailment;
  DecodingTrace& trace = result.trace;
  trace.id = instance.id;
  trace.premise_sentences.push_back(instance.premise);
  for (const std::string& s : instance.implicit)
    trace.premise_sentences.push_back(s);
  trace.claim_sentence = instance.claim;

  try {
    std::vector<AmrFormula> premise_parts;
    for (const std::string& sentence : trace.premise_sentences) {
      std::string penman = penman_for(instance, providers, sentence);
      trace.premise_graphs.push_back(penman);
      premise_parts.push_back(graph_to_formula(parse_penman(penman),
                                               config.compound_constants));
    }
    trace.claim_graph = penman_for(instance, providers, instance.claim);
    AmrFormula claim = graph_to_formula(parse_penman(trace.claim_graph),
                                        config.compound_constants);
    AmrFormula premise = conjoin(premise_parts);
    trace.premise_formula = to_string(premise);
    trace.claim_formula = to_string(claim);

    ScoreTable table = compute_scores(premise, claim, *providers.embed,
                                      *providers.nli, providers.templates);
    trace.relations.matches = matches_from_scores(table, config.tau_m);
    trace.relations.contradicts =
        contradicts_from_scores(table, config.tau_c, config.seed);

    MappingResult mr =
        build_mapping({premise, claim}, trace.relations, config.drop_conflicts);
    trace.warnings = mr.warnings;
    for (const auto& [atom, lit] : mr.mapping.assignment)
      trace.mapping.emplace_back(atom.str(), lit.str());

    AbstractFormula abstract_premise = translate(premise, mr.mapping);
    AbstractFormula abstract_claim = translate(claim, mr.mapping);
    trace.abstract_premise = to_string(abstract_premise);
    trace.abstract_claim = to_string(abstract_claim);

    if (!config.dimacs_dir.empty())
      dump_dimacs(config, instance.id, abstract_premise, abstract_claim);

    Verdict verdict =
        classify(abstract_premise, abstract_claim, config.clause_budget);
    trace.verdict = label_name(verdict.label);
    trace.premise_inconsistent = verdict.premise_inconsistent;
    result.outcome.predicted_entailment =
        verdict.label == Label::Entailment;
    trace.predicted =
        result.outcome.predicted_entailment ? "Entailment" : "NonEntailment";
  } catch (const ProviderError& e) {
    trace.error = e.what();
    trace.provider_error = true;
    result.outcome.errored = true;
  } catch (const std::exception& e) {
    trace.error = e.what();
    result.outcome.errored = true;
  }
  return result;
}

EvalOutput evaluate(const std::vector<BinaryInstance>& instances,
                    const RunConfig& config, const ProviderSet& providers) {
  EvalOutput out;
  out.results.resize(instances.size());
  parallel_for(instances.size(), config.workers, [&](size_t i) {
    out.results[i] = run_instance(instances[i], config, providers);
  });
  std::vector<InstanceOutcome> outcomes;
  outcomes.reserve(out.results.size());
  for (const InstanceResult& r : out.results) outcomes.push_back(r.outcome);
  out.report = tally(outcomes, config.exclude_errored);
  return out;
}

std::string trace_to_json(const DecodingTrace& trace) {
  json j;
  j["id"] = trace.id;
  j["premise_sentences"] = trace.premise_sentences;
  j["claim_sentence"] = trace.claim_sentence;
  j["premise_graphs"] = trace.premise_graphs;
  j["claim_graph"] = trace.claim_graph;
  j["premise_formula"] = trace.premise_formula;
  j["claim_formula"] = trace.claim_formula;
  json matches = json::array();
  for (const MatchEdge& m : trace.relations.matches) {
    matches.push_back({{"claim_atom", m.claim_atom.str()},
                       {"premise_atom", m.premise_atom.str()},
                       {"score", m.score}});
  }
  json contradicts = json::array();
  for (const ContradictEdge& c : trace.relations.contradicts) {
    contradicts.push_back({{"claim_atom", c.claim_atom.str()},
                           {"premise_atom", c.premise_atom.str()},
                           {"con_score", c.con_score}});
  }
  j["matches"] = matches;
  j["contradicts"] = contradicts;
  json mapping = json::object();
  for (const auto& [atom, lit] : trace.mapping) mapping[atom] = lit;
  j["mapping"] = mapping;
  j["abstract_premise"] = trace.abstract_premise;
  j["abstract_claim"] = trace.abstract_claim;
  j["verdict"] = trace.verdict;
  j["premise_inconsistent"] = trace.premise_inconsistent;
  j["predicted"] = trace.predicted;
  j["warnings"] = trace.warnings;
  j["error"] = trace.error;
  return j.dump();
}

std::string report_to_json(const EvalReport& report) {
  json j;
  j["confusion"] = {{"tp", report.confusion.tp},
                    {"fp", report.confusion.fp},
                    {"fn", report.confusion.fn},
                    {"tn", report.confusion.tn}};
  j["entailment"] = {{"precision", report.entailment.precision},
                     {"recall", report.entailment.recall},
                     {"f1", report.entailment.f1}};
  j["non_entailment"] = {{"precision", report.non_entailment.precision},
                         {"recall", report.non_entailment.recall},
                         {"f1", report.non_entailment.f1}};
  j["accuracy"] = report.accuracy;
  j["errored"] = report.errored;
  j["scored"] = report.scored;
  return j.dump(2);
}

std::string labels_tsv(const std::vector<InstanceResult>& results) {
  std::ostringstream out;
  for (const InstanceResult& r : results) {
    out << r.trace.id << '\t'
        << (r.outcome.gold_entailment ? "Entailment" : "NonEntailment") << '\t'
        << (r.outcome.errored ? "error" : r.trace.predicted) << '\n';
  }
  return out.str();
}

}  // namespace argdecode
