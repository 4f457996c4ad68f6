#include "argdecode/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "argdecode/amr.hpp"
#include "argdecode/fol.hpp"
#include "argdecode/util.hpp"

namespace argdecode {

namespace {

// Per-instance work that does not depend on thresholds: parsed formulas and
// the full provider score table.
struct Prepared {
  bool gold_entailment = true;
  bool failed = false;
  AmrFormula premise = AmrFormula::top();
  AmrFormula claim = AmrFormula::top();
  ScoreTable table;
};

Prepared prepare(const BinaryInstance& instance, const RunConfig& config,
                 const ProviderSet& providers) {
  Prepared p;
  p.gold_entailment = instance.gold_entailment;
  try {
    auto penman_for = [&](const std::string& sentence) {
      auto it = instance.amr.find(sentence);
      if (it != instance.amr.end()) return it->second;
      if (providers.parse) return providers.parse->parse(sentence);
      throw DataError("no bundled AMR graph and no parse provider for \"" +
                      sentence + "\"");
    };
    std::vector<AmrFormula> parts;
    parts.push_back(graph_to_formula(parse_penman(penman_for(instance.premise)),
                                     config.compound_constants));
    for (const std::string& s : instance.implicit)
      parts.push_back(graph_to_formula(parse_penman(penman_for(s)),
                                       config.compound_constants));
    p.premise = conjoin(parts);
    p.claim = graph_to_formula(parse_penman(penman_for(instance.claim)),
                               config.compound_constants);
    p.table = compute_scores(p.premise, p.claim, *providers.embed,
                             *providers.nli, providers.templates);
  } catch (const std::exception&) {
    p.failed = true;
  }
  return p;
}

InstanceOutcome rethreshold(const Prepared& p, double tau_m, double tau_c,
                            const RunConfig& config) {
  InstanceOutcome o;
  o.gold_entailment = p.gold_entailment;
  if (p.failed) {
    o.errored = true;
    return o;
  }
  try {
    RelationSet relations;
    relations.matches = matches_from_scores(p.table, tau_m);
    relations.contradicts =
        contradicts_from_scores(p.table, tau_c, config.seed);
    MappingResult mr = build_mapping({p.premise, p.claim}, relations,
                                     config.drop_conflicts);
    Verdict verdict =
        classify(translate(p.premise, mr.mapping),
                 translate(p.claim, mr.mapping), config.clause_budget);
    o.predicted_entailment = verdict.label == Label::Entailment;
  } catch (const std::exception&) {
    o.errored = true;
  }
  return o;
}

std::string format_threshold(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<DatasetItem>& items,
                            const std::vector<double>& tau_m_grid,
                            const std::vector<double>& tau_c_grid,
                            const std::vector<StepType>& step_types,
                            const RunConfig& base,
                            const ProviderSet& providers) {
  std::vector<SweepRow> rows;
  for (StepType st : step_types) {
    std::vector<BinaryInstance> instances;
    std::vector<InstanceOutcome> fixed_failures;
    for (const DatasetItem& item : items) {
      try {
        for (BinaryInstance& inst : binarize(item, st))
          instances.push_back(std::move(inst));
      } catch (const MissingSteps&) {
        // The item cannot play at this step type; score it as errored at
        // every grid point rather than dropping it.
        if (st == StepType::None) {
          fixed_failures.push_back({true, true, false});
        } else {
          fixed_failures.push_back({true, true, false});
          fixed_failures.push_back({false, true, false});
        }
      }
    }

    std::vector<Prepared> prepared(instances.size());
    parallel_for(instances.size(), base.workers, [&](size_t i) {
      prepared[i] = prepare(instances[i], base, providers);
    });

    for (double tau_m : tau_m_grid) {
      for (double tau_c : tau_c_grid) {
        std::vector<InstanceOutcome> outcomes = fixed_failures;
        outcomes.resize(fixed_failures.size() + prepared.size());
        parallel_for(prepared.size(), base.workers, [&](size_t i) {
          outcomes[fixed_failures.size() + i] =
              rethreshold(prepared[i], tau_m, tau_c, base);
        });
        SweepRow row;
        row.tau_m = tau_m;
        row.tau_c = tau_c;
        row.step_type = st;
        row.report = tally(outcomes, base.exclude_errored);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "tau_m,tau_c,step_type,tp,fp,fn,tn,scored,errored,"
         "precision_entailment,recall_entailment,f1_entailment,"
         "precision_non_entailment,recall_non_entailment,f1_non_entailment,"
         "accuracy\n";
  for (const SweepRow& r : rows) {
    const EvalReport& rep = r.report;
    out << format_threshold(r.tau_m) << ',' << format_threshold(r.tau_c) << ','
        << step_type_name(r.step_type) << ',' << rep.confusion.tp << ','
        << rep.confusion.fp << ',' << rep.confusion.fn << ','
        << rep.confusion.tn << ',' << rep.scored << ',' << rep.errored << ','
        << format_metric(rep.entailment.precision) << ','
        << format_metric(rep.entailment.recall) << ','
        << format_metric(rep.entailment.f1) << ','
        << format_metric(rep.non_entailment.precision) << ','
        << format_metric(rep.non_entailment.recall) << ','
        << format_metric(rep.non_entailment.f1) << ','
        << format_metric(rep.accuracy) << '\n';
  }
  return out.str();
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  const double width = 760, height = 480;
  const double left = 64, right = width - 220, top = 24, bottom = height - 56;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};
  const size_t palette_size = sizeof(palette) / sizeof(palette[0]);

  double min_x = 0.0, max_x = 1.0;
  if (!rows.empty()) {
    min_x = max_x = rows.front().tau_m;
    for (const SweepRow& r : rows) {
      min_x = std::min(min_x, r.tau_m);
      max_x = std::max(max_x, r.tau_m);
    }
  }
  if (max_x == min_x) {
    min_x -= 0.05;
    max_x += 0.05;
  }
  auto sx = [&](double v) {
    return left + (v - min_x) / (max_x - min_x) * (right - left);
  };
  auto sy = [&](double v) { return bottom - v * (bottom - top); };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  // One series per (τ_c, step_type), points ordered by τ_m.
  std::map<std::pair<double, std::string>, std::vector<std::pair<double, double>>>
      series;
  for (const SweepRow& r : rows)
    series[{r.tau_c, step_type_name(r.step_type)}].push_back(
        {r.tau_m, r.report.accuracy});
  for (auto& [key, pts] : series) std::sort(pts.begin(), pts.end());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // Axes.
  svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double v = i / 4.0;
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << sy(v) << "\" x2=\""
        << left << "\" y2=\"" << sy(v) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << sy(v) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  std::vector<double> xticks;
  for (const SweepRow& r : rows)
    if (std::find(xticks.begin(), xticks.end(), r.tau_m) == xticks.end())
      xticks.push_back(r.tau_m);
  std::sort(xticks.begin(), xticks.end());
  for (double v : xticks) {
    svg << "<line x1=\"" << sx(v) << "\" y1=\"" << bottom << "\" x2=\""
        << sx(v) << "\" y2=\"" << bottom + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(v) << "\" y=\"" << bottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(v)
        << "</text>\n";
  }
  svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 16
      << "\" font-size=\"12\" text-anchor=\"middle\">neuro-matching threshold "
         "tau_m</text>\n";
  svg << "<text x=\"16\" y=\"" << (top + bottom) / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "16 "
      << (top + bottom) / 2 << ")\">accuracy</text>\n";

  size_t idx = 0;
  double legend_y = top + 10;
  for (const auto& [key, pts] : series) {
    const char* color = palette[idx % palette_size];
    std::ostringstream points;
    for (const auto& [x, y] : pts) points << sx(x) << ',' << sy(y) << ' ';
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
    for (const auto& [x, y] : pts)
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    svg << "<line x1=\"" << right + 12 << "\" y1=\"" << legend_y << "\" x2=\""
        << right + 32 << "\" y2=\"" << legend_y << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << right + 38 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"11\">tau_c=" << format_threshold(key.first)
        << ", steps=" << key.second << "</text>\n";
    legend_y += 18;
    ++idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace argdecode
