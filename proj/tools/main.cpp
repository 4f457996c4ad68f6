#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "argdecode/argument_graph.hpp"
#include "argdecode/http_providers.hpp"
#include "argdecode/sweep.hpp"
#include "json.hpp"

using namespace argdecode;

namespace {

struct ProviderFlags {
  std::vector<std::string> fixtures;
  std::string embed_url, nli_url, gen_url, parse_url;
  std::string cache_dir;
  std::string templates;
};

void add_provider_flags(CLI::App* cmd, ProviderFlags& f) {
  cmd->add_option("--stub-fixtures", f.fixtures,
                  "recorded provider responses, JSON (repeatable; later files "
                  "override earlier ones)");
  cmd->add_option("--embed-url", f.embed_url,
                  "embedding endpoint (default: ARGDECODE_EMBED_URL)");
  cmd->add_option("--nli-url", f.nli_url,
                  "NLI endpoint (default: ARGDECODE_NLI_URL)");
  cmd->add_option("--gen-url", f.gen_url,
                  "chain-generation endpoint (default: ARGDECODE_GEN_URL)");
  cmd->add_option("--parse-url", f.parse_url,
                  "AMR parser endpoint (default: ARGDECODE_PARSE_URL)");
  cmd->add_option("--cache-dir", f.cache_dir,
                  "cache provider responses on disk in this directory");
  cmd->add_option("--templates", f.templates,
                  "role template table, TSV (overrides built-ins)");
}

// Stubs by default; any endpoint given by flag or environment replaces the
// stub for that capability.
ProviderSet make_providers(const ProviderFlags& f) {
  std::shared_ptr<const StubFixtures> fixtures;
  if (!f.fixtures.empty()) {
    StubFixtures merged;
    for (const std::string& path : f.fixtures)
      merged.merge(StubFixtures::load(path));
    fixtures = std::make_shared<const StubFixtures>(std::move(merged));
  }
  ProviderSet set = ProviderSet::stubs(fixtures);

  HttpOptions options = HttpOptions::from_env();
  std::string url = f.embed_url.empty() ? embed_url_from_env() : f.embed_url;
  if (!url.empty()) set.embed = std::make_shared<HttpEmbedProvider>(url, options);
  url = f.nli_url.empty() ? nli_url_from_env() : f.nli_url;
  if (!url.empty()) set.nli = std::make_shared<HttpNliProvider>(url, options);
  url = f.gen_url.empty() ? gen_url_from_env() : f.gen_url;
  if (!url.empty()) set.gen = std::make_shared<HttpGenProvider>(url, options);
  url = f.parse_url.empty() ? parse_url_from_env() : f.parse_url;
  if (!url.empty())
    set.parse = std::make_shared<HttpParseProvider>(url, options);

  if (!f.templates.empty()) set.templates = TemplateRegistry::load(f.templates);
  if (!f.cache_dir.empty())
    set = set.cached(std::make_shared<DiskCache>(f.cache_dir));
  return set;
}

void add_threshold_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--tau-m", c.tau_m,
                  "matching threshold on cosine similarity, in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--tau-c", c.tau_c,
                  "contradiction threshold on the NLI score, in [0,100]")
      ->check(CLI::Range(0.0, 100.0));
}

void add_run_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--seed", c.seed, "seed for NLI tie-breaking");
  cmd->add_flag("--compound-constants", c.compound_constants,
                "fold :mod modifiers into their constants");
  cmd->add_flag("--drop-conflicts", c.drop_conflicts,
                "drop contradiction edges that conflict with matching edges "
                "instead of failing");
  cmd->add_option("--clause-budget", c.clause_budget,
                  "max clauses before switching to definitional CNF");
  cmd->add_option("--dimacs-dump", c.dimacs_dir,
                  "write the solver queries as DIMACS files here");
  cmd->add_option("--workers", c.workers, "parallel worker threads");
}

std::map<std::string, std::string> load_amr_map(const std::string& path) {
  std::map<std::string, std::string> amr;
  if (path.empty()) return amr;
  std::ifstream in(path);
  if (!in) throw DataError("cannot read AMR map file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  for (auto& [sentence, penman] : j.items())
    amr[sentence] = penman.get<std::string>();
  return amr;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + path);
  out << text;
}

void print_violations(const std::vector<SchemaViolation>& violations) {
  for (const SchemaViolation& v : violations)
    std::cerr << "warning: " << v.id << ": " << v.message << "\n";
}

// Instances for items that cannot be binarized at this step type; they keep
// their place in the report as errored rather than vanishing.
void append_missing(std::vector<InstanceResult>& results,
                    const DatasetItem& item, StepType st,
                    const std::string& why) {
  auto add = [&](const std::string& suffix, bool gold) {
    InstanceResult r;
    r.outcome.gold_entailment = gold;
    r.outcome.errored = true;
    r.trace.id = item.id + suffix;
    r.trace.error = why;
    results.push_back(std::move(r));
  };
  if (st == StepType::None) {
    add("#none", true);
  } else {
    add("#helpful", true);
    add("#unhelpful", false);
  }
}

int cmd_decode(const ProviderFlags& pf, const RunConfig& config,
               const std::string& premise,
               const std::vector<std::string>& implicit,
               const std::string& claim, const std::string& amr_file,
               const std::string& out_path) {
  ProviderSet providers = make_providers(pf);
  BinaryInstance inst;
  inst.id = "cli";
  inst.premise = premise;
  inst.implicit = implicit;
  inst.claim = claim;
  inst.amr = load_amr_map(amr_file);
  InstanceResult result = run_instance(inst, config, providers);
  write_output(out_path, trace_to_json(result.trace) + "\n");
  if (result.trace.error.empty()) return 0;
  std::cerr << "error: " << result.trace.error << "\n";
  return result.trace.provider_error ? 2 : 3;
}

int cmd_eval(const ProviderFlags& pf, RunConfig config,
             const std::string& data, const std::string& format,
             const std::string& steps, bool exclude_errored,
             const std::string& out_path, const std::string& labels_path,
             const std::string& traces_path) {
  config.step_type = parse_step_type(steps);
  config.exclude_errored = exclude_errored;
  ProviderSet providers = make_providers(pf);

  LoadResult loaded = load_dataset(data, format);
  print_violations(loaded.violations);

  std::vector<BinaryInstance> instances;
  std::vector<InstanceResult> extra;
  for (const DatasetItem& item : loaded.items) {
    try {
      for (BinaryInstance& inst : binarize(item, config.step_type))
        instances.push_back(std::move(inst));
    } catch (const MissingSteps& e) {
      append_missing(extra, item, config.step_type, e.what());
    }
  }

  EvalOutput output = evaluate(instances, config, providers);
  for (InstanceResult& r : extra) output.results.push_back(std::move(r));
  std::vector<InstanceOutcome> outcomes;
  for (const InstanceResult& r : output.results)
    outcomes.push_back(r.outcome);
  output.report = tally(outcomes, config.exclude_errored);

  write_output(out_path, report_to_json(output.report) + "\n");
  if (!labels_path.empty())
    write_output(labels_path, labels_tsv(output.results));
  if (!traces_path.empty()) {
    std::string lines;
    for (const InstanceResult& r : output.results)
      lines += trace_to_json(r.trace) + "\n";
    write_output(traces_path, lines);
  }
  return 0;
}

int cmd_sweep(const ProviderFlags& pf, RunConfig config,
              const std::string& data, const std::string& format,
              std::vector<double> tau_m_grid, std::vector<double> tau_c_grid,
              std::vector<std::string> step_names, bool exclude_errored,
              const std::string& out_path, const std::string& svg_path) {
  config.exclude_errored = exclude_errored;
  if (tau_m_grid.empty())
    tau_m_grid = {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8};
  if (tau_c_grid.empty()) tau_c_grid = {80, 90, 100};
  if (step_names.empty()) step_names = {"original", "1", "2", "3"};
  std::vector<StepType> step_types;
  for (const std::string& name : step_names)
    step_types.push_back(parse_step_type(name));

  ProviderSet providers = make_providers(pf);
  LoadResult loaded = load_dataset(data, format);
  print_violations(loaded.violations);

  std::vector<SweepRow> rows = sweep(loaded.items, tau_m_grid, tau_c_grid,
                                     step_types, config, providers);
  write_output(out_path, sweep_csv(rows));
  if (!svg_path.empty()) write_output(svg_path, sweep_svg(rows));
  return 0;
}

int cmd_graph(const ProviderFlags& pf, const RunConfig& config,
              const std::string& premise,
              const std::vector<std::string>& implicit,
              const std::string& claim, const std::string& amr_file,
              const std::string& out_path) {
  ProviderSet providers = make_providers(pf);
  ArgumentGraph graph = build_argument_graph(
      premise, implicit, claim, config, providers, load_amr_map(amr_file));
  write_output(out_path, export_dot(graph));
  return 0;
}

int cmd_augment(const ProviderFlags& pf, const std::string& data,
                const std::string& format, const std::vector<int>& steps,
                const std::string& out_path) {
  ProviderSet providers = make_providers(pf);
  if (!providers.gen)
    throw ProviderUnavailable("augment needs a generation provider");
  LoadResult loaded = load_dataset(data, format);
  print_violations(loaded.violations);
  for (int k : steps)
    print_violations(augment(loaded.items, *providers.gen, k));
  write_output(out_path, write_jsonl(loaded.items));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"enthymeme decoding: AMR-derived propositional reasoning over "
               "premise/claim pairs"};
  app.require_subcommand(1);

  // decode
  auto* decode = app.add_subcommand(
      "decode", "decode one premise/claim pair and print the trace");
  ProviderFlags decode_pf;
  RunConfig decode_cfg;
  std::string decode_premise, decode_claim, decode_amr, decode_out;
  std::vector<std::string> decode_implicit;
  decode->add_option("--premise", decode_premise, "stated premise sentence")
      ->required();
  decode->add_option("--claim", decode_claim, "claim sentence")->required();
  decode->add_option("--implicit", decode_implicit,
                     "implicit premise sentence (repeatable)");
  decode->add_option("--amr", decode_amr,
                     "JSON file mapping sentences to PENMAN graphs");
  decode->add_option("--out", decode_out, "output file (default: stdout)");
  add_threshold_flags(decode, decode_cfg);
  add_run_flags(decode, decode_cfg);
  add_provider_flags(decode, decode_pf);

  // eval
  auto* eval = app.add_subcommand(
      "eval", "score a dataset and print a metrics report");
  ProviderFlags eval_pf;
  RunConfig eval_cfg;
  std::string eval_data, eval_format = "jsonl", eval_steps = "original";
  std::string eval_out, eval_labels, eval_traces;
  bool eval_exclude = false;
  eval->add_option("--data", eval_data, "dataset file")->required();
  eval->add_option("--format", eval_format, "arct | anli | jsonl");
  eval->add_option("--steps", eval_steps,
                   "implicit-premise side: none | original | 1 | 2 | 3");
  eval->add_flag("--exclude-errored", eval_exclude,
                 "drop errored instances from metrics instead of counting "
                 "them as wrong");
  eval->add_option("--out", eval_out, "report JSON (default: stdout)");
  eval->add_option("--labels", eval_labels, "write per-instance labels TSV");
  eval->add_option("--traces", eval_traces, "write per-instance traces JSONL");
  add_threshold_flags(eval, eval_cfg);
  add_run_flags(eval, eval_cfg);
  add_provider_flags(eval, eval_pf);

  // sweep
  auto* sw = app.add_subcommand(
      "sweep", "evaluate over threshold/step grids and emit CSV (and SVG)");
  ProviderFlags sweep_pf;
  RunConfig sweep_cfg;
  std::string sweep_data, sweep_format = "jsonl", sweep_out, sweep_svg_path;
  std::vector<double> sweep_tau_m, sweep_tau_c;
  std::vector<std::string> sweep_steps;
  bool sweep_exclude = false;
  sw->add_option("--data", sweep_data, "dataset file")->required();
  sw->add_option("--format", sweep_format, "arct | anli | jsonl");
  sw->add_option("--tau-m", sweep_tau_m,
                 "matching threshold grid (repeatable; default 0.5..0.8 by "
                 "0.05)");
  sw->add_option("--tau-c", sweep_tau_c,
                 "contradiction threshold grid (repeatable; default 80 90 "
                 "100)");
  sw->add_option("--steps", sweep_steps,
                 "step types to sweep (repeatable; default original 1 2 3)");
  sw->add_flag("--exclude-errored", sweep_exclude,
               "drop errored instances from metrics instead of counting them "
               "as wrong");
  sw->add_option("--out", sweep_out, "CSV output (default: stdout)");
  sw->add_option("--svg", sweep_svg_path, "also write an accuracy chart SVG");
  add_run_flags(sw, sweep_cfg);
  add_provider_flags(sw, sweep_pf);

  // graph
  auto* graph = app.add_subcommand(
      "graph", "build an argument graph and print DOT");
  ProviderFlags graph_pf;
  RunConfig graph_cfg;
  std::string graph_premise, graph_claim, graph_amr, graph_out;
  std::vector<std::string> graph_implicit;
  graph->add_option("--premise", graph_premise, "stated premise sentence")
      ->required();
  graph->add_option("--claim", graph_claim, "claim sentence")->required();
  graph->add_option("--implicit", graph_implicit,
                    "candidate implicit premise (repeatable)");
  graph->add_option("--amr", graph_amr,
                    "JSON file mapping sentences to PENMAN graphs");
  graph->add_option("--out", graph_out, "DOT output (default: stdout)");
  add_threshold_flags(graph, graph_cfg);
  add_run_flags(graph, graph_cfg);
  add_provider_flags(graph, graph_pf);

  // augment
  auto* aug = app.add_subcommand(
      "augment", "generate missing implicit-premise chains and write JSONL");
  ProviderFlags aug_pf;
  std::string aug_data, aug_format = "jsonl", aug_out;
  std::vector<int> aug_steps = {1};
  aug->add_option("--data", aug_data, "dataset file")->required();
  aug->add_option("--format", aug_format, "arct | anli | jsonl");
  aug->add_option("--steps", aug_steps,
                  "chain lengths to generate (repeatable; default 1)")
      ->check(CLI::Range(1, 3));
  aug->add_option("--out", aug_out, "JSONL output (default: stdout)");
  add_provider_flags(aug, aug_pf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (decode->parsed())
      return cmd_decode(decode_pf, decode_cfg, decode_premise, decode_implicit,
                        decode_claim, decode_amr, decode_out);
    if (eval->parsed())
      return cmd_eval(eval_pf, eval_cfg, eval_data, eval_format, eval_steps,
                      eval_exclude, eval_out, eval_labels, eval_traces);
    if (sw->parsed())
      return cmd_sweep(sweep_pf, sweep_cfg, sweep_data, sweep_format,
                       sweep_tau_m, sweep_tau_c, sweep_steps, sweep_exclude,
                       sweep_out, sweep_svg_path);
    if (graph->parsed())
      return cmd_graph(graph_pf, graph_cfg, graph_premise, graph_implicit,
                       graph_claim, graph_amr, graph_out);
    if (aug->parsed())
      return cmd_augment(aug_pf, aug_data, aug_format, aug_steps, aug_out);
  } catch (const ProviderError& e) {
    std::cerr << "provider error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
