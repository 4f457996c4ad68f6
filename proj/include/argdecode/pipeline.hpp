#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "argdecode/cache.hpp"
#include "argdecode/dataset.hpp"
#include "argdecode/formula.hpp"
#include "argdecode/metrics.hpp"
#include "argdecode/providers.hpp"
#include "argdecode/reason.hpp"
#include "argdecode/relax.hpp"
#include "argdecode/stub_providers.hpp"

namespace argdecode {

struct RunConfig {
  double tau_m = 0.6;        // neuro-matching threshold, in [0,1]
  double tau_c = 80.0;       // neuro-contradict threshold, in [0,100]
  StepType step_type = StepType::Original;
  uint64_t seed = 0;         // NLI tie-breaking
  bool compound_constants = false;  // collapse :mod edges into constants
  bool drop_conflicts = false;      // drop conflicting ⊥ edges instead of erroring
  bool exclude_errored = false;     // exclude errored instances from metrics
  size_t clause_budget = 10000;
  unsigned workers = 1;
  std::string dimacs_dir;  // when set, query CNFs are dumped here
};

/// The four neural capabilities plus the template table. gen and parse may be
/// null when unused.
struct ProviderSet {
  std::shared_ptr<EmbedProvider> embed;
  std::shared_ptr<NliProvider> nli;
  std::shared_ptr<GenProvider> gen;
  std::shared_ptr<AmrParseProvider> parse;
  TemplateRegistry templates = TemplateRegistry::builtin();

  /// All-stub set; fixtures may be null (hash embeddings, neutral NLI,
  /// no recorded chains or parses).
  static ProviderSet stubs(
      std::shared_ptr<const StubFixtures> fixtures = nullptr);

  /// The same set with every provider wrapped in a disk cache.
  ProviderSet cached(std::shared_ptr<DiskCache> cache) const;
};

/// Everything the decoding run saw and decided, for audit and graph export.
struct DecodingTrace {
  std::string id;
  std::vector<std::string> premise_sentences;  // explicit premise + implicit
  std::string claim_sentence;
  std::vector<std::string> premise_graphs;  // PENMAN, parallel to sentences
  std::string claim_graph;
  std::string premise_formula;  // φ, rendered
  std::string claim_formula;    // ψ
  RelationSet relations;
  std::vector<std::pair<std::string, std::string>> mapping;  // atom → literal
  std::string abstract_premise;
  std::string abstract_claim;
  std::string verdict;  // three-way label
  bool premise_inconsistent = false;
  std::string predicted;  // Entailment | NonEntailment; empty when errored
  std::vector<std::string> warnings;
  std::string error;  // non-empty when the instance errored
  bool provider_error = false;  // the error came from a provider call
};

std::string trace_to_json(const DecodingTrace& trace);

struct InstanceResult {
  InstanceOutcome outcome;
  DecodingTrace trace;
};

/// parse → ground → pool premise formulas into φ → ≃/⊥ → mapping →
/// translate → classify. Contradiction and Neutral both predict
/// NonEntailment; the three-way verdict stays in the trace. Any stage error
/// marks the instance errored instead of propagating.
InstanceResult run_instance(const BinaryInstance& instance,
                            const RunConfig& config,
                            const ProviderSet& providers);

struct EvalOutput {
  EvalReport report;
  std::vector<InstanceResult> results;  // in input order
};

/// Runs instances in parallel (config.workers); output is deterministic for
/// a fixed seed regardless of thread count.
EvalOutput evaluate(const std::vector<BinaryInstance>& instances,
                    const RunConfig& config, const ProviderSet& providers);

std::string report_to_json(const EvalReport& report);

/// One "id<TAB>gold<TAB>predicted" line per instance; errored instances
/// predict "error".
std::string labels_tsv(const std::vector<InstanceResult>& results);

}  // namespace argdecode
