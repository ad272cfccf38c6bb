#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "texstitch/decomposer.h"
#include "texstitch/stitch_plan.h"
#include "texstitch/stitch_planner.h"
#include "texstitch/texture_engine.h"

namespace texstitch {

struct LintThresholds {
  int scatter_min_stitches = 5;
  double scatter_min_area_mm2 = 1.0;
  double continuity_len_mm = 10.0;
  double text_min_height_mm = 5.0;
  /// Icon strokes that never get further apart than this merge into one blob.
  double detail_merge_mm = 0.3;
  /// Thread width added to stitch extents when measuring footprints.
  double thread_width_mm = 0.4;
  double weight_continuity = 0.5;
  double weight_detail = 0.3;
  double weight_scatter = 0.2;
};

/// Throws RangeError for negative thresholds or weights.
void validate_thresholds(const LintThresholds& thresholds);

enum class Severity { Info, Warning, Error };

std::string_view to_string(Severity severity);

struct LintFinding {
  Severity severity = Severity::Warning;
  std::string code;
  std::string message;
  std::string location;
};

struct LintScores {
  /// Share of thread in blocks at least continuity_len long.
  double continuity = 1.0;
  /// Share of icon stamps whose strokes stay distinct.
  double detail = 1.0;
  /// Share of text elements tall enough to stitch cleanly.
  double text_ok = 1.0;
  /// Trims and jumps per cm^2 of stitched footprint, initial positioning excluded.
  double backside_mess = 0.0;
  /// Share of blocks flagged SCATTERED.
  double scatter_penalty = 0.0;
};

struct LintReport {
  std::vector<LintFinding> findings;
  LintScores scores;

  size_t count(std::string_view code) const;
  size_t warning_count() const;
  /// continuity, detail and scatter penalty weighted per `thresholds`.
  double composite(const LintThresholds& thresholds = {}) const;
};

/// Check a scene against the plan assembled from it:
///  - SCATTERED: a fill block with fewer than scatter_min_stitches normal
///    stitches or a footprint under scatter_min_area;
///  - DETAIL_LOSS: an icon texture whose strokes merge at its scale;
///  - SMALL_TEXT: text below text_min_height.
/// Never throws on well-formed input; findings are advisory.
LintReport lint_scene(const DecomposedScene& scene, const StitchPlan& plan, const LintThresholds& thresholds = {});

/// Whether two strokes of `glyph` merge at `scale_mm`: every point of one
/// (after quantization) lies within `merge_mm` of the other.
bool glyph_strokes_merge(const Glyph& glyph, double scale_mm, double merge_mm);

struct TextureScore {
  size_t index = 0;  // position in the input list
  std::string description;
  double score = 0.0;
  LintScores scores;
};

/// Stitch each pattern alone on `region` and rank by composite score,
/// best first; ties keep input order.
std::vector<TextureScore> rank_textures(const std::vector<TexturePattern>& patterns, const Polygon& region,
                                        const LintThresholds& thresholds = {}, const PlannerParams& params = {});

/// The scene holding `pattern` clipped to `region` and nothing else.
DecomposedScene texture_scene(const TexturePattern& pattern, const Polygon& region);

nlohmann::json report_to_json(const LintReport& report);
std::string report_summary(const LintReport& report);

}  // namespace texstitch
