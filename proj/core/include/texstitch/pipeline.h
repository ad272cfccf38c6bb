#pragma once

#include <string>
#include <vector>

#include "texstitch/chart_model.h"
#include "texstitch/decomposer.h"
#include "texstitch/lint.h"
#include "texstitch/stitch_plan.h"
#include "texstitch/stitch_planner.h"

namespace texstitch {

struct CompileOptions {
  PlannerParams planner;
  LintThresholds lint;
  LayoutStyle layout;
  double outline_margin_mm = kDefaultOutlineMarginMm;
};

struct CompiledChart {
  Scene scene;
  /// Decomposed scene in plan coordinates (centred on the hoop origin).
  DecomposedScene decomposed;
  StitchPlan plan;
  LintReport lint;
  std::vector<Warning> warnings;
};

/// Layout, decompose, plan and lint a chart. The plan is named after the
/// chart title.
CompiledChart compile_chart(const ChartSpec& spec, const TextureLibrary& textures, const CompileOptions& options = {});

}  // namespace texstitch
