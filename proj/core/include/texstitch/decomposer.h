#pragma once

#include <string>
#include <vector>

#include "texstitch/chart_model.h"
#include "texstitch/texture_engine.h"

namespace texstitch {

inline constexpr double kDefaultOutlineMarginMm = 0.6;

/// A solid region, stitched as a tatami fill.
struct AreaFill {
  Polygon region;
  int source = -1;  // index into Scene::elements
};

/// Texture primitives clipped to the owning bar inset by the outline margin.
struct TextureFill {
  Polygon owner_region;  // empty when the inset leaves no area
  std::string texture_id;
  TexturePattern pattern;
  FillPrimitives primitives;
  int source = -1;
};

struct Outline {
  Polyline path;
  ElementRole role = ElementRole::Axis;
  int source = -1;
};

struct TextElement {
  std::string text;
  Vec2 position;
  double height_mm = 0.0;
  double rotation_deg = 0.0;
  ElementRole role = ElementRole::Label;
  int source = -1;
};

struct DecomposedScene {
  std::vector<AreaFill> area_fills;
  std::vector<TextureFill> texture_line_fills;
  std::vector<Outline> outlines;
  std::vector<TextElement> text_elements;
  Rect bounds_mm;

  size_t element_count() const {
    return area_fills.size() + texture_line_fills.size() + outlines.size() + text_elements.size();
  }
};

/// Route every scene element to exactly one stitching strategy: solid bars
/// to area fills, textured bars to texture fills, outlines/axes/ticks to
/// running-stitch outlines and text to the stroke font.
///
/// Throws UnknownTexture for unresolved texture ids and RangeError for
/// bar fills that are not rectangles.
DecomposedScene decompose(const Scene& scene, const TextureLibrary& library,
                          double outline_margin_mm = kDefaultOutlineMarginMm);

/// Same scene shifted by `offset` mm. Texture primitives are moved, not
/// regenerated.
DecomposedScene translated(const DecomposedScene& scene, Vec2 offset);

}  // namespace texstitch
