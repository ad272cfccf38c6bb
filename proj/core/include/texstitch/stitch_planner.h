#pragma once

#include <span>
#include <string>
#include <vector>

#include "texstitch/decomposer.h"
#include "texstitch/error.h"
#include "texstitch/geometry.h"
#include "texstitch/stitch_plan.h"
#include "texstitch/stroke_font.h"
#include "texstitch/texture_engine.h"

namespace texstitch {

struct PlannerParams {
  double max_stitch_mm = 4.0;
  double min_stitch_mm = 0.3;
  double fill_row_spacing_mm = 0.4;
  double fill_angle_deg = 0.0;
  double trim_threshold_mm = 5.0;
  double hoop_width_mm = 100.0;
  double hoop_height_mm = 100.0;
  double machine_speed_spm = 400.0;
};

/// Throws RangeError unless 0 < min < max <= 12.1, spacing > 0, the hoop
/// has area, the trim threshold is non-negative and the speed positive.
void validate_params(const PlannerParams& params);

/// Intermediate planning unit: connected runs of needle points in plan
/// units. Consecutive runs of a block are joined by a jump (and a trim when
/// far enough apart) during ordering.
struct StitchBlock {
  BlockRole role = BlockRole::Unknown;
  std::vector<std::vector<StitchPoint>> runs;

  bool empty() const { return runs.empty(); }
  StitchPoint start() const { return runs.front().front(); }
  StitchPoint end() const { return runs.back().back(); }
  size_t point_count() const;
};

/// Needle points of a running stitch along `path` (mm). Vertices are kept,
/// each segment is split evenly into ceil(len / max_stitch) stitches (more
/// when rounding to plan units would overshoot), and points closer than
/// min_stitch to the previous one are dropped; the final vertex is always
/// kept. A single-vertex path yields one point and a DegeneratePath warning.
std::vector<StitchPoint> running_stitches(std::span<const Vec2> path, const PlannerParams& params,
                                          std::vector<Warning>* warnings = nullptr);

StitchBlock plan_running(std::span<const Vec2> path, const PlannerParams& params,
                         BlockRole role = BlockRole::Outline, std::vector<Warning>* warnings = nullptr);

/// Tatami fill: rows along fill_angle every fill_row_spacing (first one half
/// a spacing in), traversed serpentine. Rows that continue each other form a
/// section linked along the boundary; boundary stretches that the rows leave
/// uncovered are stitched out and back. Sections are joined along the
/// boundary when that is short, otherwise by a jump.
///
/// Throws DegenerateRegion.
StitchBlock plan_fill(const Polygon& region, const PlannerParams& params, BlockRole role = BlockRole::AreaFill);

/// Hatch texture lines chained like fill rows, without coverage stitching.
StitchBlock plan_line_texture(const Polygon& region, std::span<const ScanRows> families,
                              const PlannerParams& params);

/// Dots below this diameter are stitched as a tack rather than filled.
double tack_dot_limit_mm(const PlannerParams& params);

/// A dot becomes a three-point tack or a small disk fill; an icon becomes
/// one run per glyph stroke, strokes chained nearest-first.
StitchBlock plan_stamp(const Stamp& stamp, const Glyph* glyph, const PlannerParams& params);

/// One block per font stroke.
std::vector<StitchBlock> plan_text(std::span<const TextElement> elements, const PlannerParams& params,
                                   const StrokeFont& font = StrokeFont::simplex(),
                                   std::vector<Warning>* warnings = nullptr);

/// Inter-block travel in mm when blocks are visited in `order` from `start`.
double travel_mm(std::span<const StitchBlock> blocks, std::span<const size_t> order, StitchPoint start = {});

/// Greedy nearest-neighbour visiting order from `start`, ties to the lower index.
std::vector<size_t> greedy_order(std::span<const StitchBlock> blocks, StitchPoint start = {});

/// Order blocks (area fills, then texture fills, outlines, text; nearest
/// neighbour within each class, never worse than the given order) and emit
/// the plan with its connecting moves. Throws HoopOverflow.
StitchPlan order_blocks(std::span<const StitchBlock> blocks, const PlannerParams& params, std::string name = {});

/// Every component of the scene planned, in scene order.
std::vector<StitchBlock> plan_components(const DecomposedScene& scene, const PlannerParams& params,
                                         std::vector<Warning>* warnings = nullptr);

/// The scene centred on the hoop origin.
DecomposedScene centered(const DecomposedScene& scene);

/// Centre, plan every component (in parallel) and order. Throws the
/// sub-planners' errors and HoopOverflow.
StitchPlan assemble_plan(const DecomposedScene& scene, const PlannerParams& params, std::string name = {},
                         std::vector<Warning>* warnings = nullptr);

}  // namespace texstitch
