#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "texstitch/geometry.h"
#include "texstitch/texture_engine.h"

namespace texstitch {

struct Category {
  std::string name;
  double value = 0.0;
  std::string texture_id;

  bool operator==(const Category&) const = default;
};

struct Axis {
  double min = 0.0;
  double max = 5.0;
  double tick_step = 1.0;

  bool operator==(const Axis&) const = default;
};

struct PlotSize {
  double width_mm = 80.0;
  double height_mm = 50.0;
  double bar_gap_mm = 3.0;
  double margin_mm = 4.0;

  bool operator==(const PlotSize&) const = default;
};

/// Declarative vertical bar chart.
struct ChartSpec {
  std::string title;
  std::vector<Category> categories;
  Axis axis;
  PlotSize plot;
  double label_height_mm = 5.0;

  bool operator==(const ChartSpec&) const = default;
};

/// Parse the JSON chart document. Keys: `title`, `axis {min, max,
/// tick_step}`, `plot {width_mm, height_mm, bar_gap_mm, margin_mm}`,
/// `categories [{name, value, texture}]`, `label_height_mm`. Unknown keys are
/// rejected. `axis.min` defaults to 0, `axis.tick_step` to 1, `bar_gap_mm` to
/// 3, `margin_mm` to 4 and `label_height_mm` to 5.
///
/// Errors: SyntaxError, RangeError, EmptyChart, UnknownTexture.
ChartSpec parse_chart_spec(const std::string& document, const TextureLibrary& textures);
ChartSpec load_chart_spec(const std::string& path, const TextureLibrary& textures);

/// Invariant checks shared by the parser and programmatic callers.
void validate_chart_spec(const ChartSpec& spec, const TextureLibrary& textures);

std::string chart_spec_to_json(const ChartSpec& spec);

enum class LabelOrientation { Auto, Horizontal, Vertical };

struct LayoutStyle {
  double tick_length_mm = 2.0;
  double label_gap_mm = 2.0;
  double title_gap_mm = 3.0;
  /// 0 means "same as the category labels".
  double title_height_mm = 0.0;
  /// Auto turns labels upright when any of them is wider than a bar pitch.
  LabelOrientation label_orientation = LabelOrientation::Auto;
};

enum class ElementRole { BarFill, BarOutline, Axis, Tick, Label, Title };

std::string_view to_string(ElementRole role);

struct TextGeometry {
  std::string text;
  Vec2 origin;  // start of the baseline
  double height_mm = 0.0;
  double rotation_deg = 0.0;

  bool operator==(const TextGeometry&) const = default;
};

struct PointStamp {
  Vec2 center;
  double diameter_mm = 0.0;

  bool operator==(const PointStamp&) const = default;
};

using ElementGeometry = std::variant<Rect, Polyline, PointStamp, TextGeometry>;

struct SceneElement {
  ElementGeometry geometry;
  ElementRole role = ElementRole::Axis;
  std::optional<std::string> texture_id;
  int category = -1;

  bool operator==(const SceneElement&) const = default;
};

struct Scene {
  std::vector<SceneElement> elements;
  Rect bounds_mm;

  bool operator==(const Scene&) const = default;
};

/// Axis-aligned extent of an element. Text uses the font's advance box from
/// descender to cap line.
Rect element_bounds(const SceneElement& element);

/// Lay the chart out in millimetres with the origin at the lower-left corner
/// of the scene.
///
/// Bars are `(plot.width - (n + 1) * gap) / n` wide, separated and flanked
/// by `gap`, and rise from `axis.min`: height is
/// `(value - min) / (max - min) * plot.height`. Every bar contributes an
/// outline rectangle and, unless its height is zero, a fill rectangle with
/// the same geometry. Ticks sit left of the y axis every `tick_step`,
/// category labels below the bars and the title above the plot.
///
/// Throws LayoutOverflow when labels do not fit their bars or the title is
/// wider than the scene.
Scene layout_chart(const ChartSpec& spec, const LayoutStyle& style = {});

}  // namespace texstitch
