#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argdecode/providers.hpp"

namespace argdecode {

/// Unreadable file or unknown format name — fatal.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested step lists are absent from an item.
struct MissingSteps : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-item problem found while loading; collected, not fatal.
struct SchemaViolation {
  std::string id;  // item id, or "line N" when no id could be read
  std::string message;
};

/// Which implicit-premise side length to evaluate: no implicit premise at
/// all, the source dataset's own single implicit premise, or a generated
/// chain of 1–3 steps.
enum class StepType { None, Original, One, Two, Three };

std::string step_type_name(StepType t);
StepType parse_step_type(const std::string& name);
/// 0 for None/Original.
int step_count(StepType t);

struct DatasetItem {
  std::string id;
  std::string premise;
  std::string claim;
  /// Generated chains, keyed by step count (1..3); each list holds exactly
  /// that many sentences.
  std::map<int, std::vector<std::string>> helpful;
  std::map<int, std::vector<std::string>> unhelpful;
  /// The source dataset's own implicit premises (ARCT warrants, ANLI
  /// hypotheses), when the source provides them.
  std::optional<std::string> original_helpful;
  std::optional<std::string> original_unhelpful;
  /// Bundled PENMAN graphs, keyed by exact sentence text.
  std::map<std::string, std::string> amr;
  std::string source;  // "arct" | "anli" | "jsonl"
  /// Set when augmentation failed for this item; such items are excluded
  /// from runs but never silently dropped.
  bool generation_failed = false;
};

struct LoadResult {
  std::vector<DatasetItem> items;
  std::vector<SchemaViolation> violations;
};

/// format ∈ {"arct", "anli", "jsonl"}.
///   arct  — TSV with header columns #id, warrant0, warrant1,
///           correctLabelW0orW1, reason, claim; premise = reason, the correct
///           warrant is the helpful implicit premise.
///   anli  — JSONL with obs1/obs2/hyp1/hyp2/label; premise = obs1,
///           claim = obs2, label picks the helpful hypothesis.
///   jsonl — the native schema written by write_jsonl (schema: 1).
LoadResult load_dataset(const std::string& path, const std::string& format);

/// One line per item: {"id", "premise", "claim", "helpful": {"1": [...]},
/// "unhelpful": {...}, "helpful_original", "unhelpful_original",
/// "amr": {sentence → penman}, "schema": 1}. Keys are emitted sorted, so
/// output is byte-stable.
std::string write_jsonl(const std::vector<DatasetItem>& items);

/// One scoring unit: premise + implicit premises vs claim with a binary gold
/// label (Entailment when the implicit side was helpful).
struct BinaryInstance {
  std::string id;
  std::string premise;
  std::vector<std::string> implicit;
  std::string claim;
  bool gold_entailment = true;
  std::map<std::string, std::string> amr;
};

/// StepType::None → one instance with no implicit premise, gold Entailment.
/// Otherwise two instances: helpful side gold Entailment, unhelpful side
/// gold NonEntailment. Throws MissingSteps when the requested lists are
/// absent.
std::vector<BinaryInstance> binarize(const DatasetItem& item, StepType t);

/// Fills helpful/unhelpful chains of the given step count on every item that
/// lacks them. Items whose generation fails are flagged; failures are also
/// returned as violations.
std::vector<SchemaViolation> augment(std::vector<DatasetItem>& items,
                                     GenProvider& gen, int steps);

}  // namespace argdecode
