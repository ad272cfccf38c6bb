#include "texstitch/lint.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace texstitch {

namespace {

constexpr double kSampleStepMm = 0.05;

bool counts_for_scatter(BlockRole role) {
  return role == BlockRole::TextureFill || role == BlockRole::AreaFill || role == BlockRole::Unknown;
}

Polyline quantized(const Polyline& line) {
  Polyline out;
  for (const Vec2& p : line) out.push_back({to_mm(to_units(p.x)), to_mm(to_units(p.y))});
  return out;
}

bool covered_by(const Polyline& a, const Polyline& b, double merge_mm) {
  if (a.empty() || b.empty()) return false;
  auto near = [&](Vec2 p) { return point_polyline_distance(p, b) <= merge_mm; };
  if (!near(a.front())) return false;
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    const int n = std::max(1, static_cast<int>(std::ceil(distance(a[i], a[i + 1]) / kSampleStepMm)));
    for (int k = 1; k <= n; ++k)
      if (!near(lerp(a[i], a[i + 1], static_cast<double>(k) / n))) return false;
  }
  return true;
}

std::string fmt(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void validate_thresholds(const LintThresholds& t) {
  if (t.scatter_min_stitches < 0 || t.scatter_min_area_mm2 < 0.0 || t.continuity_len_mm < 0.0 ||
      t.text_min_height_mm < 0.0 || t.detail_merge_mm < 0.0 || t.thread_width_mm < 0.0 || t.weight_continuity < 0.0 ||
      t.weight_detail < 0.0 || t.weight_scatter < 0.0)
    throw Error(ErrorCode::RangeError, "lint thresholds and weights must be non-negative");
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "info";
}

size_t LintReport::count(std::string_view code) const {
  return static_cast<size_t>(
      std::count_if(findings.begin(), findings.end(), [code](const LintFinding& f) { return f.code == code; }));
}

size_t LintReport::warning_count() const {
  return static_cast<size_t>(std::count_if(findings.begin(), findings.end(),
                                           [](const LintFinding& f) { return f.severity != Severity::Info; }));
}

double LintReport::composite(const LintThresholds& t) const {
  return t.weight_continuity * scores.continuity + t.weight_detail * scores.detail +
         t.weight_scatter * (1.0 - scores.scatter_penalty);
}

bool glyph_strokes_merge(const Glyph& glyph, double scale_mm, double merge_mm) {
  std::vector<Polyline> strokes;
  for (const auto& s : place_glyph(glyph, {0.0, 0.0}, scale_mm)) strokes.push_back(quantized(s));
  for (size_t i = 0; i < strokes.size(); ++i) {
    for (size_t j = 0; j < strokes.size(); ++j) {
      if (i != j && covered_by(strokes[i], strokes[j], merge_mm)) return true;
    }
  }
  return false;
}

LintReport lint_scene(const DecomposedScene& scene, const StitchPlan& plan, const LintThresholds& t) {
  validate_thresholds(t);
  LintReport report;

  // Scatter and continuity over the stitched blocks.
  StitchPoint pos{0, 0};
  std::vector<double> lengths;
  size_t scattered = 0;
  for (size_t bi = 0; bi < plan.blocks.size(); ++bi) {
    const PlanBlock& block = plan.blocks[bi];
    lengths.push_back(block_thread_length_mm(block, pos));
    int normals = 0;
    IntRect box{std::numeric_limits<int32_t>::max(), std::numeric_limits<int32_t>::max(),
                std::numeric_limits<int32_t>::min(), std::numeric_limits<int32_t>::min()};
    for (const auto& s : block.stitches) {
      pos = s.point();
      if (s.kind != StitchKind::Normal) continue;
      ++normals;
      box = {std::min(box.x0, s.x), std::min(box.y0, s.y), std::max(box.x1, s.x), std::max(box.y1, s.y)};
    }
    if (!counts_for_scatter(block.role) || normals == 0) continue;
    const double footprint =
        (to_mm(box.x1 - box.x0) + t.thread_width_mm) * (to_mm(box.y1 - box.y0) + t.thread_width_mm);
    if (normals < t.scatter_min_stitches || footprint < t.scatter_min_area_mm2) {
      ++scattered;
      report.findings.push_back(
          {Severity::Warning, "SCATTERED",
           std::to_string(normals) + " stitches over " + fmt(footprint) + " mm^2; isolated stitch groups tangle on the back",
           "block " + std::to_string(bi) + " at (" + fmt(to_mm(box.x0), 1) + ", " + fmt(to_mm(box.y0), 1) + ") mm"});
    }
  }
  if (!plan.blocks.empty()) report.scores.scatter_penalty = static_cast<double>(scattered) / plan.blocks.size();

  double total = 0.0;
  for (double l : lengths) total += l;
  if (total > 0.0) {
    const double limit = std::min(t.continuity_len_mm, total);
    double continuous = 0.0;
    for (double l : lengths)
      if (l >= limit) continuous += l;
    report.scores.continuity = continuous / total;
  }

  // Icon detail.
  size_t icon_stamps = 0;
  size_t lost_stamps = 0;
  for (size_t fi = 0; fi < scene.texture_line_fills.size(); ++fi) {
    const TextureFill& fill = scene.texture_line_fills[fi];
    const auto* icon = std::get_if<IconPattern>(&fill.pattern);
    if (icon == nullptr) continue;
    size_t stamps = 0;
    for (const auto& s : fill.primitives.stamps)
      if (s.kind == StampKind::Icon) ++stamps;
    icon_stamps += stamps;
    if (stamps == 0 || !glyph_strokes_merge(icon->glyph, icon->scale_mm, t.detail_merge_mm)) continue;
    lost_stamps += stamps;
    report.findings.push_back({Severity::Warning, "DETAIL_LOSS",
                               "strokes of icon '" + icon->glyph.name + "' merge at " + fmt(icon->scale_mm, 1) +
                                   " mm; " + std::to_string(stamps) + " stamps will read as blobs",
                               "texture fill " + std::to_string(fi) + " (scene element " +
                                   std::to_string(fill.source) + ", texture '" + fill.texture_id + "')"});
  }
  if (icon_stamps > 0) report.scores.detail = 1.0 - static_cast<double>(lost_stamps) / icon_stamps;

  // Text size.
  size_t small = 0;
  for (size_t ti = 0; ti < scene.text_elements.size(); ++ti) {
    const TextElement& te = scene.text_elements[ti];
    if (te.height_mm >= t.text_min_height_mm) continue;
    ++small;
    report.findings.push_back({Severity::Warning, "SMALL_TEXT",
                               "text '" + te.text + "' is " + fmt(te.height_mm, 1) + " mm tall, below " +
                                   fmt(t.text_min_height_mm, 1) + " mm",
                               "text element " + std::to_string(ti) + " (scene element " +
                                   std::to_string(te.source) + ")"});
  }
  if (!scene.text_elements.empty())
    report.scores.text_ok = 1.0 - static_cast<double>(small) / scene.text_elements.size();

  // Back-side messiness: moves after the initial positioning per stitched area.
  size_t moves = 0;
  IntRect box{std::numeric_limits<int32_t>::max(), std::numeric_limits<int32_t>::max(),
              std::numeric_limits<int32_t>::min(), std::numeric_limits<int32_t>::min()};
  bool stitched = false;
  for (const auto& block : plan.blocks) {
    for (const auto& s : block.stitches) {
      if (s.kind == StitchKind::Normal) {
        stitched = true;
        box = {std::min(box.x0, s.x), std::min(box.y0, s.y), std::max(box.x1, s.x), std::max(box.y1, s.y)};
      } else if (stitched && (s.kind == StitchKind::Jump || s.kind == StitchKind::Trim)) {
        ++moves;
      }
    }
  }
  if (stitched) {
    const double area_cm2 =
        (to_mm(box.x1 - box.x0) + t.thread_width_mm) * (to_mm(box.y1 - box.y0) + t.thread_width_mm) / 100.0;
    report.scores.backside_mess = static_cast<double>(moves) / area_cm2;
  }
  return report;
}

DecomposedScene texture_scene(const TexturePattern& pattern, const Polygon& region) {
  DecomposedScene scene;
  TextureFill fill;
  fill.owner_region = region;
  fill.pattern = pattern;
  fill.texture_id = describe(pattern);
  fill.primitives = fill_region(region, pattern);
  fill.source = 0;
  scene.texture_line_fills.push_back(std::move(fill));
  const Rect b = bounding_box(region);
  scene.bounds_mm = b;
  return scene;
}

std::vector<TextureScore> rank_textures(const std::vector<TexturePattern>& patterns, const Polygon& region,
                                        const LintThresholds& thresholds, const PlannerParams& params) {
  std::vector<TextureScore> out;
  for (size_t i = 0; i < patterns.size(); ++i) {
    const DecomposedScene scene = centered(texture_scene(patterns[i], region));
    const StitchPlan plan = order_blocks(plan_components(scene, params), params);
    const LintReport report = lint_scene(scene, plan, thresholds);
    out.push_back({i, describe(patterns[i]), report.composite(thresholds), report.scores});
  }
  std::stable_sort(out.begin(), out.end(), [](const TextureScore& a, const TextureScore& b) { return a.score > b.score; });
  return out;
}

nlohmann::json report_to_json(const LintReport& report) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : report.findings)
    findings.push_back(
        {{"severity", to_string(f.severity)}, {"code", f.code}, {"message", f.message}, {"location", f.location}});
  return {{"findings", findings},
          {"scores",
           {{"continuity", report.scores.continuity},
            {"detail", report.scores.detail},
            {"text_ok", report.scores.text_ok},
            {"backside_mess", report.scores.backside_mess},
            {"scatter_penalty", report.scores.scatter_penalty}}}};
}

std::string report_summary(const LintReport& report) {
  std::ostringstream os;
  for (const auto& f : report.findings)
    os << to_string(f.severity) << " " << f.code << " [" << f.location << "]: " << f.message << "\n";
  const LintScores& s = report.scores;
  os << "continuity " << fmt(s.continuity) << ", detail " << fmt(s.detail) << ", text_ok " << fmt(s.text_ok)
     << ", backside_mess " << fmt(s.backside_mess) << " moves/cm^2, scatter " << fmt(s.scatter_penalty) << "\n";
  os << report.findings.size() << " finding(s), " << report.warning_count() << " warning(s)\n";
  return os.str();
}

}  // namespace texstitch
