#pragma once

#include <string>
#include <vector>

#include "argdecode/pipeline.hpp"

namespace argdecode {

struct SweepRow {
  double tau_m = 0.0;
  double tau_c = 0.0;
  StepType step_type = StepType::Original;
  EvalReport report;
};

/// Evaluates every (τ_m, τ_c, step_type) grid point. Graphs are parsed and
/// provider scores computed once per instance; grid points only re-threshold
/// the cached scores, so the provider pass is independent of grid size.
/// Items that cannot be binarized for a step type (missing chains,
/// generation failures) count as errored instances at every grid point.
std::vector<SweepRow> sweep(const std::vector<DatasetItem>& items,
                            const std::vector<double>& tau_m_grid,
                            const std::vector<double>& tau_c_grid,
                            const std::vector<StepType>& step_types,
                            const RunConfig& base,
                            const ProviderSet& providers);

/// Deterministic CSV: header plus one row per grid point, in
/// step_type-major, then τ_m, then τ_c order.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Accuracy vs τ_m line chart, one series per (τ_c, step_type) pair.
std::string sweep_svg(const std::vector<SweepRow>& rows);

}  // namespace argdecode
