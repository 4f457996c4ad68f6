#pragma once

#include <vector>

namespace argdecode {

/// Binary confusion counts with Entailment as the positive class (class 1).
struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;

  int total() const { return tp + fp + fn + tn; }
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  ConfusionCounts confusion;
  ClassMetrics entailment;      // class 1
  ClassMetrics non_entailment;  // class 0
  double accuracy = 0.0;
  int errored = 0;  // instances that failed somewhere in the pipeline
  int scored = 0;   // instances inside the confusion counts
};

/// Per-instance result feeding a report.
struct InstanceOutcome {
  bool gold_entailment = true;
  bool errored = false;
  bool predicted_entailment = false;  // meaningless when errored
};

/// Standard formulas: precision = TP/(TP+FP), recall = TP/(TP+FN),
/// F1 = 2PR/(P+R); each defined as 0 when its denominator is 0. Class-0
/// metrics use TN as that class's hits. accuracy = (TP+TN)/total.
EvalReport compute_metrics(const ConfusionCounts& counts, int errored = 0);

/// Folds outcomes into a report. Errored instances are counted as wrongly
/// predicted (a conservative default) unless exclude_errored, in which case
/// they only appear in the errored count.
EvalReport tally(const std::vector<InstanceOutcome>& outcomes,
                 bool exclude_errored = false);

}  // namespace argdecode
