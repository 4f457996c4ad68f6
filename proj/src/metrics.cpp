#include "argdecode/metrics.hpp"

namespace argdecode {

namespace {

double ratio(int num, int den) { return den == 0 ? 0.0 : double(num) / den; }

ClassMetrics class_metrics(int hits, int false_pos, int false_neg) {
  ClassMetrics m;
  m.precision = ratio(hits, hits + false_pos);
  m.recall = ratio(hits, hits + false_neg);
  double pr = m.precision + m.recall;
  m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
  return m;
}

}  // namespace

EvalReport compute_metrics(const ConfusionCounts& counts, int errored) {
  EvalReport r;
  r.confusion = counts;
  r.entailment = class_metrics(counts.tp, counts.fp, counts.fn);
  // For class 0 the roles swap: TN are its hits, FN are spurious class-0
  // predictions, FP are class-0 instances predicted as class 1.
  r.non_entailment = class_metrics(counts.tn, counts.fn, counts.fp);
  r.accuracy = ratio(counts.tp + counts.tn, counts.total());
  r.errored = errored;
  r.scored = counts.total();
  return r;
}

EvalReport tally(const std::vector<InstanceOutcome>& outcomes,
                 bool exclude_errored) {
  ConfusionCounts c;
  int errored = 0;
  for (const InstanceOutcome& o : outcomes) {
    bool predicted;
    if (o.errored) {
      ++errored;
      if (exclude_errored) continue;
      predicted = !o.gold_entailment;  // counted as wrong
    } else {
      predicted = o.predicted_entailment;
    }
    if (o.gold_entailment)
      ++(predicted ? c.tp : c.fn);
    else
      ++(predicted ? c.fp : c.tn);
  }
  return compute_metrics(c, errored);
}

}  // namespace argdecode
