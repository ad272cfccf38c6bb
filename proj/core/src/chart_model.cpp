#include "texstitch/chart_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "texstitch/error.h"
#include "texstitch/stroke_font.h"

namespace texstitch {

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw Error(ErrorCode::SyntaxError, "unknown key '" + key + "' in " + where);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw Error(ErrorCode::SyntaxError, "missing key '" + std::string(key) + "' in " + where);
  return obj.at(key);
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw Error(ErrorCode::SyntaxError, what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw Error(ErrorCode::SyntaxError, what + " must be finite");
  return d;
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw Error(ErrorCode::SyntaxError, what + " must be a string");
  return v.get<std::string>();
}

double optional_number(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? as_number(obj.at(key), where + "." + key) : fallback;
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0)) throw Error(ErrorCode::RangeError, what + " must be > 0");
}

}  // namespace

std::string_view to_string(ElementRole role) {
  switch (role) {
    case ElementRole::BarFill: return "bar-fill";
    case ElementRole::BarOutline: return "bar-outline";
    case ElementRole::Axis: return "axis";
    case ElementRole::Tick: return "tick";
    case ElementRole::Label: return "label";
    case ElementRole::Title: return "title";
  }
  return "unknown";
}

void validate_chart_spec(const ChartSpec& spec, const TextureLibrary& textures) {
  if (spec.categories.empty()) throw Error(ErrorCode::EmptyChart, "chart has no categories");
  if (!(spec.axis.min < spec.axis.max)) throw Error(ErrorCode::RangeError, "axis.min must be < axis.max");
  require_positive(spec.axis.tick_step, "axis.tick_step");
  require_positive(spec.plot.width_mm, "plot.width_mm");
  require_positive(spec.plot.height_mm, "plot.height_mm");
  require_positive(spec.plot.bar_gap_mm, "plot.bar_gap_mm");
  require_positive(spec.plot.margin_mm, "plot.margin_mm");
  require_positive(spec.label_height_mm, "label_height_mm");
  for (const auto& c : spec.categories) {
    if (c.value < spec.axis.min || c.value > spec.axis.max) {
      std::ostringstream os;
      os << "category '" << c.name << "' value " << c.value << " outside axis [" << spec.axis.min << ", "
         << spec.axis.max << "]";
      throw Error(ErrorCode::RangeError, os.str());
    }
    if (!textures.contains(c.texture_id))
      throw Error(ErrorCode::UnknownTexture, "category '" + c.name + "' uses unknown texture '" + c.texture_id + "'");
  }
}

ChartSpec parse_chart_spec(const std::string& document, const TextureLibrary& textures) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "chart document must be an object");
  reject_unknown_keys(doc, {"title", "axis", "plot", "categories", "label_height_mm"}, "chart");

  ChartSpec spec;
  spec.title = doc.contains("title") ? as_string(doc["title"], "title") : std::string();

  const json& axis = require(doc, "axis", "chart");
  if (!axis.is_object()) throw Error(ErrorCode::SyntaxError, "axis must be an object");
  reject_unknown_keys(axis, {"min", "max", "tick_step"}, "axis");
  spec.axis.min = optional_number(axis, "min", 0.0, "axis");
  spec.axis.max = as_number(require(axis, "max", "axis"), "axis.max");
  spec.axis.tick_step = optional_number(axis, "tick_step", 1.0, "axis");

  const json& plot = require(doc, "plot", "chart");
  if (!plot.is_object()) throw Error(ErrorCode::SyntaxError, "plot must be an object");
  reject_unknown_keys(plot, {"width_mm", "height_mm", "bar_gap_mm", "margin_mm"}, "plot");
  spec.plot.width_mm = as_number(require(plot, "width_mm", "plot"), "plot.width_mm");
  spec.plot.height_mm = as_number(require(plot, "height_mm", "plot"), "plot.height_mm");
  spec.plot.bar_gap_mm = optional_number(plot, "bar_gap_mm", 3.0, "plot");
  spec.plot.margin_mm = optional_number(plot, "margin_mm", 4.0, "plot");

  spec.label_height_mm = optional_number(doc, "label_height_mm", 5.0, "chart");

  const json& cats = require(doc, "categories", "chart");
  if (!cats.is_array()) throw Error(ErrorCode::SyntaxError, "categories must be an array");
  for (size_t i = 0; i < cats.size(); ++i) {
    const json& c = cats[i];
    const std::string where = "categories[" + std::to_string(i) + "]";
    if (!c.is_object()) throw Error(ErrorCode::SyntaxError, where + " must be an object");
    reject_unknown_keys(c, {"name", "value", "texture"}, where);
    spec.categories.push_back({as_string(require(c, "name", where), where + ".name"),
                               as_number(require(c, "value", where), where + ".value"),
                               as_string(require(c, "texture", where), where + ".texture")});
  }

  validate_chart_spec(spec, textures);
  return spec;
}

ChartSpec load_chart_spec(const std::string& path, const TextureLibrary& textures) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_chart_spec(buf.str(), textures);
}

std::string chart_spec_to_json(const ChartSpec& spec) {
  json doc;
  doc["title"] = spec.title;
  doc["axis"] = {{"min", spec.axis.min}, {"max", spec.axis.max}, {"tick_step", spec.axis.tick_step}};
  doc["plot"] = {{"width_mm", spec.plot.width_mm},
                 {"height_mm", spec.plot.height_mm},
                 {"bar_gap_mm", spec.plot.bar_gap_mm},
                 {"margin_mm", spec.plot.margin_mm}};
  doc["label_height_mm"] = spec.label_height_mm;
  doc["categories"] = json::array();
  for (const auto& c : spec.categories)
    doc["categories"].push_back({{"name", c.name}, {"value", c.value}, {"texture", c.texture_id}});
  return doc.dump(2);
}

Rect element_bounds(const SceneElement& element) {
  struct Visitor {
    Rect operator()(const Rect& r) const { return r; }
    Rect operator()(const Polyline& p) const { return bounding_box(p); }
    Rect operator()(const PointStamp& s) const {
      const double r = s.diameter_mm / 2.0;
      return {s.center.x - r, s.center.y - r, s.center.x + r, s.center.y + r};
    }
    Rect operator()(const TextGeometry& t) const {
      const auto& font = StrokeFont::simplex();
      const double w = font.text_width_mm(t.text, t.height_mm);
      const double d = t.height_mm * StrokeFont::descent() / StrokeFont::cap_height();
      const Vec2 u = direction_from_angle(t.rotation_deg);
      const Vec2 v{-u.y, u.x};
      const std::vector<Vec2> corners{t.origin + v * -d, t.origin + u * w + v * -d, t.origin + u * w + v * t.height_mm,
                                      t.origin + v * t.height_mm};
      return bounding_box(corners);
    }
  };
  return std::visit(Visitor{}, element.geometry);
}

Scene layout_chart(const ChartSpec& spec, const LayoutStyle& style) {
  const auto& font = StrokeFont::simplex();
  const size_t n = spec.categories.size();
  if (n == 0) throw Error(ErrorCode::EmptyChart, "chart has no categories");
  const double gap = spec.plot.bar_gap_mm;
  const double plot_w = spec.plot.width_mm;
  const double plot_h = spec.plot.height_mm;
  const double margin = spec.plot.margin_mm;
  const double bar_w = (plot_w - static_cast<double>(n + 1) * gap) / static_cast<double>(n);
  if (!(bar_w > 0.0)) throw Error(ErrorCode::LayoutOverflow, "bars do not fit in the plot width");
  const double pitch = bar_w + gap;

  const double label_h = spec.label_height_mm;
  const double label_descent = label_h * StrokeFont::descent() / StrokeFont::cap_height();
  const double label_thickness = label_h + label_descent;
  double widest = 0.0;
  for (const auto& c : spec.categories) widest = std::max(widest, font.text_width_mm(c.name, label_h));

  bool vertical = style.label_orientation == LabelOrientation::Vertical;
  if (style.label_orientation == LabelOrientation::Auto) vertical = widest > pitch;
  if (!vertical && widest > pitch)
    throw Error(ErrorCode::LayoutOverflow, "category labels are wider than a bar pitch");
  if (vertical && label_thickness > pitch)
    throw Error(ErrorCode::LayoutOverflow, "upright category labels are thicker than a bar pitch");
  const double label_band = vertical ? widest : label_thickness;

  const double title_h = style.title_height_mm > 0.0 ? style.title_height_mm : label_h;
  const double title_descent = title_h * StrokeFont::descent() / StrokeFont::cap_height();
  const bool has_title = !spec.title.empty();

  const double x0 = margin + style.tick_length_mm;
  const double y0 = margin + label_band + style.label_gap_mm;
  const double scene_w = x0 + plot_w + margin;
  const double scene_h =
      y0 + plot_h + (has_title ? style.title_gap_mm + title_descent + title_h : 0.0) + margin;

  Scene scene;
  scene.bounds_mm = {0.0, 0.0, scene_w, scene_h};
  const double range = spec.axis.max - spec.axis.min;

  for (size_t i = 0; i < n; ++i) {
    const auto& c = spec.categories[i];
    const double bx = x0 + gap + static_cast<double>(i) * pitch;
    const double h = (c.value - spec.axis.min) / range * plot_h;
    const Rect bar{bx, y0, bx + bar_w, y0 + h};
    if (h > 0.0) scene.elements.push_back({bar, ElementRole::BarFill, c.texture_id, static_cast<int>(i)});
    scene.elements.push_back({bar, ElementRole::BarOutline, std::nullopt, static_cast<int>(i)});
  }

  scene.elements.push_back({Polyline{{x0, y0}, {x0 + plot_w, y0}}, ElementRole::Axis, std::nullopt, -1});
  scene.elements.push_back({Polyline{{x0, y0}, {x0, y0 + plot_h}}, ElementRole::Axis, std::nullopt, -1});

  const double tol = 1e-9 * range;
  for (int k = 0;; ++k) {
    const double t = spec.axis.min + k * spec.axis.tick_step;
    if (t > spec.axis.max + tol) break;
    const double y = y0 + (t - spec.axis.min) / range * plot_h;
    scene.elements.push_back(
        {Polyline{{x0 - style.tick_length_mm, y}, {x0, y}}, ElementRole::Tick, std::nullopt, -1});
  }

  for (size_t i = 0; i < n; ++i) {
    const auto& c = spec.categories[i];
    const double cx = x0 + gap + static_cast<double>(i) * pitch + bar_w / 2.0;
    const double w = font.text_width_mm(c.name, label_h);
    TextGeometry text{c.name, {}, label_h, 0.0};
    if (vertical) {
      text.rotation_deg = 90.0;
      text.origin = {cx + (label_h - label_descent) / 2.0, y0 - style.label_gap_mm - w};
    } else {
      text.origin = {cx - w / 2.0, y0 - style.label_gap_mm - label_h};
    }
    scene.elements.push_back({text, ElementRole::Label, std::nullopt, static_cast<int>(i)});
  }

  if (has_title) {
    const double tw = font.text_width_mm(spec.title, title_h);
    if (tw > scene_w - 2.0 * margin) throw Error(ErrorCode::LayoutOverflow, "title is wider than the chart");
    TextGeometry text{spec.title, {(scene_w - tw) / 2.0, y0 + plot_h + style.title_gap_mm + title_descent}, title_h,
                      0.0};
    scene.elements.push_back({text, ElementRole::Title, std::nullopt, -1});
  }

  for (const auto& e : scene.elements)
    if (!scene.bounds_mm.contains(element_bounds(e), 1e-6))
      throw Error(ErrorCode::LayoutOverflow, std::string(to_string(e.role)) + " element exceeds the chart bounds");
  return scene;
}

}  // namespace texstitch
