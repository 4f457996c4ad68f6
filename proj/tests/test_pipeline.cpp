#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "argdecode/argument_graph.hpp"
#include "argdecode/dataset.hpp"
#include "argdecode/metrics.hpp"
#include "argdecode/pipeline.hpp"
#include "argdecode/sweep.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace argdecode;

namespace {

std::string data_path(const std::string& rel) {
  return std::string(ARGDECODE_DATA_DIR) + "/" + rel;
}

BinaryInstance want_go_instance() {
  BinaryInstance inst;
  inst.id = "want-go#helpful";
  inst.premise = "The boy wants to go.";
  inst.claim = "The boy goes.";
  inst.gold_entailment = true;
  inst.amr[inst.premise] = "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))";
  inst.amr[inst.claim] = "(g / go-01 :ARG0 (b / boy))";
  return inst;
}

ProviderSet corpus_providers() {
  auto fixtures = std::make_shared<StubFixtures>(
      StubFixtures::load(data_path("fixtures/corpus.json")));
  return ProviderSet::stubs(fixtures);
}

std::vector<BinaryInstance> corpus_instances(StepType t) {
  LoadResult loaded = load_dataset(data_path("corpus/mini.jsonl"), "jsonl");
  REQUIRE(loaded.violations.empty());
  std::vector<BinaryInstance> instances;
  for (const DatasetItem& item : loaded.items)
    for (BinaryInstance& inst : binarize(item, t))
      instances.push_back(std::move(inst));
  return instances;
}

}  // namespace

TEST_CASE("run_instance decodes the shared-atom entailment end to end") {
  ProviderSet providers = ProviderSet::stubs();
  RunConfig config;
  InstanceResult result = run_instance(want_go_instance(), config, providers);

  const DecodingTrace& t = result.trace;
  CHECK(t.id == "want-go#helpful");
  CHECK(t.error.empty());
  CHECK(!t.provider_error);
  CHECK(t.premise_sentences == std::vector<std::string>{"The boy wants to go."});
  CHECK(t.premise_graphs.size() == 1);
  CHECK(t.premise_formula == "arg0(want,boy) & arg1(want,go) & arg0(go,boy)");
  CHECK(t.claim_formula == "arg0(go,boy)");
  // letters are assigned in canonical atom order, printed in formula order
  CHECK(t.abstract_premise == "x2 & x3 & x1");
  CHECK(t.abstract_claim == "x1");
  CHECK(t.mapping.size() == 3);
  CHECK(t.verdict == "Entailment");
  CHECK(t.predicted == "Entailment");
  CHECK(!t.premise_inconsistent);
  CHECK(result.outcome.predicted_entailment);
  CHECK(result.outcome.gold_entailment);
  CHECK(!result.outcome.errored);

  // the trace serializes as a single JSON line
  std::string line = trace_to_json(t);
  CHECK(line.find('\n') == std::string::npos);
  nlohmann::json parsed = nlohmann::json::parse(line);
  CHECK(parsed.at("id") == "want-go#helpful");
  CHECK(parsed.at("verdict") == "Entailment");
}

TEST_CASE("run_instance flags negated claims as contradiction") {
  BinaryInstance inst = want_go_instance();
  inst.id = "want-go#unhelpful";
  inst.claim = "The boy does not go.";
  inst.gold_entailment = false;
  inst.amr.erase("The boy goes.");
  inst.amr[inst.claim] = "(g / go-01 :polarity - :ARG0 (b / boy))";
  InstanceResult result = run_instance(inst, RunConfig{}, ProviderSet::stubs());
  CHECK(result.trace.verdict == "Contradiction");
  CHECK(result.trace.predicted == "NonEntailment");
  CHECK(!result.outcome.predicted_entailment);
  CHECK(!result.outcome.errored);
}

TEST_CASE("run_instance errors are contained, with provider failures marked") {
  // missing graphs and no parse fixture: the stub parser is replay-only
  BinaryInstance no_amr = want_go_instance();
  no_amr.amr.clear();
  InstanceResult provider_fail = run_instance(no_amr, RunConfig{}, ProviderSet::stubs());
  CHECK(provider_fail.outcome.errored);
  CHECK(!provider_fail.trace.error.empty());
  CHECK(provider_fail.trace.provider_error);
  CHECK(provider_fail.trace.predicted.empty());

  // malformed bundled graph: a data problem, not a provider one
  BinaryInstance bad_amr = want_go_instance();
  bad_amr.amr[bad_amr.premise] = "(w / want-01";
  InstanceResult data_fail = run_instance(bad_amr, RunConfig{}, ProviderSet::stubs());
  CHECK(data_fail.outcome.errored);
  CHECK(!data_fail.trace.error.empty());
  CHECK(!data_fail.trace.provider_error);
}

TEST_CASE("implicit sentences join the premise pool") {
  auto fixtures = std::make_shared<StubFixtures>();
  fixtures->parses["The boy is brave."] = "(b / brave :domain (b2 / boy))";
  BinaryInstance inst = want_go_instance();
  inst.implicit = {"The boy is brave."};
  InstanceResult result = run_instance(inst, RunConfig{}, ProviderSet::stubs(fixtures));
  CHECK(result.trace.premise_sentences ==
        std::vector<std::string>{"The boy wants to go.", "The boy is brave."});
  CHECK(result.trace.premise_graphs.size() == 2);
  CHECK(result.trace.premise_formula.find("domain(brave,boy)") != std::string::npos);
  CHECK(result.trace.verdict == "Entailment");  // extra premise cannot hurt here
}

TEST_CASE("compute_metrics and tally") {
  EvalReport r = compute_metrics({30, 10, 20, 40});
  CHECK(r.entailment.precision == doctest::Approx(0.75));
  CHECK(r.entailment.recall == doctest::Approx(0.60));
  CHECK(r.entailment.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(r.non_entailment.precision == doctest::Approx(40.0 / 60.0));
  CHECK(r.non_entailment.recall == doctest::Approx(0.80));
  CHECK(r.accuracy == doctest::Approx(0.70));
  CHECK(r.scored == 100);

  // degenerate denominators define the metric as zero
  EvalReport zero = compute_metrics({0, 0, 0, 5});
  CHECK(zero.entailment.precision == 0.0);
  CHECK(zero.entailment.recall == 0.0);
  CHECK(zero.entailment.f1 == 0.0);
  CHECK(zero.accuracy == 1.0);

  std::vector<InstanceOutcome> outcomes = {
      {true, false, true},    // TP
      {true, false, false},   // FN
      {false, false, false},  // TN
      {false, false, true},   // FP
      {true, true, false},    // errored, counted as FN
      {false, true, false},   // errored, counted as FP
  };
  EvalReport counted = tally(outcomes);
  CHECK(counted.confusion.tp == 1);
  CHECK(counted.confusion.fn == 2);
  CHECK(counted.confusion.fp == 2);
  CHECK(counted.confusion.tn == 1);
  CHECK(counted.errored == 2);
  CHECK(counted.scored == 6);

  EvalReport excluded = tally(outcomes, true);
  CHECK(excluded.confusion.tp == 1);
  CHECK(excluded.confusion.fn == 1);
  CHECK(excluded.confusion.fp == 1);
  CHECK(excluded.confusion.tn == 1);
  CHECK(excluded.errored == 2);
  CHECK(excluded.scored == 4);
}

TEST_CASE("evaluate is deterministic across worker counts") {
  ProviderSet providers = corpus_providers();
  std::vector<BinaryInstance> instances = corpus_instances(StepType::Original);
  REQUIRE(instances.size() == 20);

  RunConfig one;
  one.workers = 1;
  RunConfig many;
  many.workers = 8;
  EvalOutput serial = evaluate(instances, one, providers);
  EvalOutput parallel = evaluate(instances, many, providers);
  CHECK(labels_tsv(serial.results) == labels_tsv(parallel.results));
  CHECK(report_to_json(serial.report) == report_to_json(parallel.report));
  // and across repeat runs
  EvalOutput again = evaluate(instances, one, providers);
  CHECK(labels_tsv(serial.results) == labels_tsv(again.results));

  // results stay in input order
  for (size_t i = 0; i < instances.size(); ++i)
    CHECK(serial.results[i].trace.id == instances[i].id);
}

TEST_CASE("labels_tsv lines are id, gold, predicted") {
  ProviderSet providers = corpus_providers();
  std::vector<BinaryInstance> instances = corpus_instances(StepType::Original);
  EvalOutput out = evaluate(instances, RunConfig{}, providers);
  std::string tsv = labels_tsv(out.results);
  CHECK(tsv.find("c01#helpful\tEntailment\tEntailment\n") != std::string::npos);
  CHECK(tsv.find("c02#unhelpful\tNonEntailment\tNonEntailment\n") != std::string::npos);
  CHECK(tsv.find("c09#unhelpful\tNonEntailment\terror\n") != std::string::npos);
}

TEST_CASE("sweep re-thresholds to the same report a fresh run produces") {
  LoadResult loaded = load_dataset(data_path("corpus/mini.jsonl"), "jsonl");
  ProviderSet providers = corpus_providers();
  RunConfig base;

  std::vector<SweepRow> rows =
      sweep(loaded.items, {0.6, 0.65}, {80, 100}, {StepType::Original}, base, providers);
  REQUIRE(rows.size() == 4);

  for (const SweepRow& row : rows) {
    RunConfig config = base;
    config.tau_m = row.tau_m;
    config.tau_c = row.tau_c;
    std::vector<BinaryInstance> instances = corpus_instances(row.step_type);
    EvalOutput fresh = evaluate(instances, config, providers);
    CAPTURE(row.tau_m);
    CAPTURE(row.tau_c);
    CHECK(report_to_json(row.report) == report_to_json(fresh.report));
  }
}

TEST_CASE("sweep grid order and csv shape") {
  LoadResult loaded = load_dataset(data_path("corpus/mini.jsonl"), "jsonl");
  ProviderSet providers = corpus_providers();
  std::vector<SweepRow> rows =
      sweep(loaded.items, {0.5, 0.7}, {80, 90}, {StepType::None, StepType::Original},
            RunConfig{}, providers);
  REQUIRE(rows.size() == 8);
  // step-type major, then tau_m, then tau_c
  CHECK(rows[0].step_type == StepType::None);
  CHECK(rows[0].tau_m == 0.5);
  CHECK(rows[0].tau_c == 80.0);
  CHECK(rows[1].tau_c == 90.0);
  CHECK(rows[2].tau_m == 0.7);
  CHECK(rows[4].step_type == StepType::Original);

  std::string csv = sweep_csv(rows);
  auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 9);
  CHECK(csv.rfind("tau_m,tau_c,step_type,tp,fp,fn,tn,scored,errored,"
                  "precision_entailment,recall_entailment,f1_entailment,"
                  "precision_non_entailment,recall_non_entailment,"
                  "f1_non_entailment,accuracy\n", 0) == 0);
  CHECK(csv.find("\n0.5,80,none,") != std::string::npos);
  CHECK(csv.find(",original,") != std::string::npos);
  // metrics carry six decimals
  CHECK(csv.find("0.800000") != std::string::npos);
}

TEST_CASE("sweep svg is a well-formed accuracy chart") {
  LoadResult loaded = load_dataset(data_path("corpus/mini.jsonl"), "jsonl");
  ProviderSet providers = corpus_providers();
  std::vector<SweepRow> rows =
      sweep(loaded.items, {0.5, 0.6, 0.7}, {80, 90}, {StepType::Original},
            RunConfig{}, providers);
  std::string svg = sweep_svg(rows);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("tau_c=80, steps=original") != std::string::npos);
  CHECK(svg.find("tau_c=90, steps=original") != std::string::npos);
  // one polyline per (tau_c, step) series
  size_t polylines = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 2);
  // deterministic output
  CHECK(svg == sweep_svg(rows));
}

TEST_CASE("sweep counts unaugmentable items as errored at every grid point") {
  DatasetItem bare;  // no original warrants, no chains
  bare.id = "bare";
  bare.premise = "p";
  bare.claim = "c";
  std::vector<SweepRow> rows = sweep({bare}, {0.6}, {80}, {StepType::Original},
                                     RunConfig{}, ProviderSet::stubs());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].report.errored == 2);
  CHECK(rows[0].report.accuracy == 0.0);

  // step none never needs chains, and an unparseable instance still errors
  std::vector<SweepRow> none_rows = sweep({bare}, {0.6}, {80}, {StepType::None},
                                          RunConfig{}, ProviderSet::stubs());
  CHECK(none_rows[0].report.errored == 1);
}

TEST_CASE("argument graph arcs carry solver labels and relation annotations") {
  StubFixtures merged = StubFixtures::load(data_path("fixtures/spiderweb.json"));
  merged.merge(StubFixtures::load(data_path("fixtures/spiderweb_amr.json")));
  ProviderSet providers = ProviderSet::stubs(std::make_shared<StubFixtures>(merged));
  RunConfig config;
  config.compound_constants = true;

  std::vector<std::string> implicit = {
      "Torn webs result from trapped prey escaping.",
      "Small insect fled.",
      "Wind tears a spiderweb.",
  };
  ArgumentGraph graph = build_argument_graph(
      "The spiderweb is torn.", implicit, "A large insect escaped recently.",
      config, providers);

  REQUIRE(graph.nodes.size() == 8);
  CHECK(graph.nodes[0].id == "premise");
  CHECK(graph.nodes[0].formula == "arg1(tear,spiderweb)");
  CHECK(graph.nodes[4].id == "claim");
  CHECK(graph.nodes[5].id == "bundle1");

  REQUIRE(graph.arcs.size() == 4);
  CHECK(graph.arcs[0].from == "premise");
  CHECK(graph.arcs[0].label == ArcLabel::Neutral);
  CHECK(graph.arcs[1].from == "bundle1");
  CHECK(graph.arcs[1].label == ArcLabel::Support);
  REQUIRE(!graph.arcs[1].annotations.empty());
  CHECK(graph.arcs[1].annotations[0] ==
        "arg0(escape,large insect) ~ arg0(escape,prey) (0.90)");
  CHECK(graph.arcs[2].from == "bundle2");
  CHECK(graph.arcs[2].label == ArcLabel::Contradict);
  CHECK(graph.arcs[2].annotations[0] ==
        "arg0(escape,large insect) _|_ arg0(flee,small insect) (90)");
  CHECK(graph.arcs[3].label == ArcLabel::Neutral);

  CHECK(graph.compositions.size() == 6);
  CHECK(graph.compositions[0] == std::pair<std::string, std::string>{"premise", "bundle1"});
}

TEST_CASE("dot export is deterministic and structurally sound") {
  StubFixtures merged = StubFixtures::load(data_path("fixtures/spiderweb.json"));
  merged.merge(StubFixtures::load(data_path("fixtures/spiderweb_amr.json")));
  ProviderSet providers = ProviderSet::stubs(std::make_shared<StubFixtures>(merged));
  RunConfig config;
  config.compound_constants = true;
  std::vector<std::string> implicit = {
      "Torn webs result from trapped prey escaping.",
      "Small insect fled.",
      "Wind tears a spiderweb.",
  };
  ArgumentGraph graph = build_argument_graph(
      "The spiderweb is torn.", implicit, "A large insect escaped recently.",
      config, providers);
  std::string dot = export_dot(graph);
  CHECK(dot == export_dot(graph));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
  CHECK(dot.find("color=blue") != std::string::npos);   // support
  CHECK(dot.find("color=red") != std::string::npos);    // contradiction
  CHECK(dot.find("color=green") != std::string::npos);  // neutral
  CHECK(dot.find("arrowhead=none") != std::string::npos);
  // every declared node id appears, and arcs reference declared ids
  for (const ArgumentNode& node : graph.nodes)
    CHECK(dot.find("\"" + node.id + "\"") != std::string::npos);
}

TEST_CASE("argument graph with no implicit sentences is premise vs claim") {
  auto fixtures = std::make_shared<StubFixtures>();
  fixtures->parses["The boy wants to go."] =
      "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))";
  fixtures->parses["The boy goes."] = "(g / go-01 :ARG0 (b / boy))";
  ArgumentGraph graph =
      build_argument_graph("The boy wants to go.", {}, "The boy goes.",
                           RunConfig{}, ProviderSet::stubs(fixtures));
  REQUIRE(graph.nodes.size() == 2);
  REQUIRE(graph.arcs.size() == 1);
  CHECK(graph.arcs[0].label == ArcLabel::Support);
  CHECK(graph.compositions.empty());
}
