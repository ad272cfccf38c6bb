#include "texstitch/pipeline.h"

namespace texstitch {

CompiledChart compile_chart(const ChartSpec& spec, const TextureLibrary& textures, const CompileOptions& options) {
  validate_params(options.planner);
  validate_thresholds(options.lint);
  CompiledChart out;
  out.scene = layout_chart(spec, options.layout);
  out.decomposed = centered(decompose(out.scene, textures, options.outline_margin_mm));
  out.plan = order_blocks(plan_components(out.decomposed, options.planner, &out.warnings), options.planner, spec.title);
  out.lint = lint_scene(out.decomposed, out.plan, options.lint);
  return out;
}

}  // namespace texstitch
