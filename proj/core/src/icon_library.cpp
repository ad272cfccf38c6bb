#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "texstitch/error.h"
#include "texstitch/texture_engine.h"

namespace texstitch {

namespace {

using json = nlohmann::json;

/// Elliptical arc from `a0` to `a1` degrees, inclusive of both ends.
Polyline arc(Vec2 c, double rx, double ry, double a0, double a1, int segments) {
  Polyline out;
  for (int i = 0; i <= segments; ++i) {
    const double a = (a0 + (a1 - a0) * i / segments) * std::numbers::pi / 180.0;
    out.push_back({c.x + rx * std::cos(a), c.y + ry * std::sin(a)});
  }
  return out;
}

Polyline ellipse(Vec2 c, double rx, double ry, int segments) { return arc(c, rx, ry, 0, 360, segments); }

Glyph make(std::string name, std::vector<Polyline> strokes) { return {std::move(name), std::move(strokes)}; }

// Single-stroke vegetables. Each is drawn so its strokes stay well apart,
// except the tomato, whose calyx and stem hug the body the way a real
// tomato's do; at small scales those strokes become indistinguishable.
std::vector<Glyph> vegetable_glyphs() {
  std::vector<Glyph> out;

  out.push_back(make("carrot", {
                                   {{0.36, 0.72}, {0.64, 0.72}, {0.50, 0.05}, {0.36, 0.72}},
                                   {{0.40, 0.95}, {0.50, 0.78}, {0.60, 0.95}},
                                   {{0.50, 0.78}, {0.50, 0.97}},
                               }));

  out.push_back(make("celery", {
                                   {{0.42, 0.70}, {0.40, 0.05}, {0.60, 0.05}, {0.58, 0.70}},
                                   {{0.30, 0.76}, {0.40, 0.95}, {0.50, 0.80}, {0.60, 0.95}, {0.70, 0.76}},
                               }));

  out.push_back(make("corn", {
                                 ellipse({0.50, 0.58}, 0.20, 0.36, 24),
                                 {{0.44, 0.32}, {0.44, 0.84}},
                                 {{0.56, 0.32}, {0.56, 0.84}},
                                 {{0.25, 0.04}, {0.42, 0.28}},
                                 {{0.75, 0.04}, {0.58, 0.28}},
                             }));

  out.push_back(make("eggplant", {
                                     ellipse({0.50, 0.40}, 0.28, 0.33, 24),
                                     {{0.36, 0.80}, {0.50, 0.86}, {0.64, 0.80}},
                                     {{0.50, 0.88}, {0.53, 0.98}},
                                 }));

  {
    Polyline cap = arc({0.50, 0.50}, 0.45, 0.40, 0, 180, 16);
    cap.push_back(cap.front());
    out.push_back(make("mushroom", {
                                       cap,
                                       {{0.41, 0.47}, {0.39, 0.06}, {0.61, 0.06}, {0.59, 0.47}},
                                   }));
  }

  out.push_back(make("olive", {
                                  ellipse({0.50, 0.50}, 0.30, 0.40, 24),
                                  ellipse({0.50, 0.62}, 0.08, 0.10, 12),
                              }));

  {
    const Vec2 c{0.50, 0.45};
    const double r = 0.40;
    Polyline calyx;
    for (int i = 0; i <= 4; ++i) {
      const double a = (60.0 + 15.0 * i) * std::numbers::pi / 180.0;
      const double rr = (i % 2 == 0) ? r - 0.035 : r + 0.035;
      calyx.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
    }
    out.push_back(make("tomato", {
                                     ellipse(c, r, r, 20),
                                     calyx,
                                     {{0.50, 0.86}, {0.53, 0.93}},
                                 }));
  }
  return out;
}

std::vector<Glyph> geometric_glyphs() {
  std::vector<Glyph> out;
  out.push_back(make("circle", {ellipse({0.5, 0.5}, 0.4, 0.4, 24)}));
  out.push_back(make("square", {{{0.15, 0.15}, {0.85, 0.15}, {0.85, 0.85}, {0.15, 0.85}, {0.15, 0.15}}}));
  out.push_back(make("triangle", {{{0.1, 0.15}, {0.9, 0.15}, {0.5, 0.85}, {0.1, 0.15}}}));
  out.push_back(make("diamond", {{{0.5, 0.05}, {0.9, 0.5}, {0.5, 0.95}, {0.1, 0.5}, {0.5, 0.05}}}));
  out.push_back(make("cross", {{{0.5, 0.1}, {0.5, 0.9}}, {{0.1, 0.5}, {0.9, 0.5}}}));
  {
    Polyline star;
    for (int i = 0; i <= 5; ++i) {
      const double a = (90.0 + 144.0 * i) * std::numbers::pi / 180.0;
      star.push_back({0.5 + 0.45 * std::cos(a), 0.5 + 0.45 * std::sin(a)});
    }
    out.push_back(make("star", {star}));
  }
  return out;
}

double number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw Error(ErrorCode::SyntaxError, std::string(key) + " must be a number");
  return doc.at(key).get<double>();
}

}  // namespace

IconLibrary IconLibrary::builtin() {
  IconLibrary lib;
  for (auto& g : vegetable_glyphs()) lib.add(std::move(g));
  for (auto& g : geometric_glyphs()) lib.add(std::move(g));
  return lib;
}

const Glyph& IconLibrary::lookup(const std::string& name) const {
  auto it = glyphs_.find(name);
  if (it == glyphs_.end()) throw Error(ErrorCode::UnknownTexture, "no icon named '" + name + "'");
  return it->second;
}

std::vector<std::string> IconLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : glyphs_) out.push_back(name);
  return out;
}

void IconLibrary::add(Glyph glyph) {
  if (glyph.strokes.empty()) throw Error(ErrorCode::RangeError, "icon '" + glyph.name + "' has no strokes");
  for (const auto& stroke : glyph.strokes) {
    if (stroke.empty()) throw Error(ErrorCode::RangeError, "icon '" + glyph.name + "' has an empty stroke");
    for (const auto& p : stroke)
      if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
        throw Error(ErrorCode::RangeError, "icon '" + glyph.name + "' leaves the unit box");
  }
  std::string key = glyph.name;
  glyphs_[key] = std::move(glyph);
}

void IconLibrary::load_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("glyph file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("icons") || !doc["icons"].is_object())
    throw Error(ErrorCode::SyntaxError, "glyph file needs an \"icons\" object");
  for (const auto& [name, strokes] : doc["icons"].items()) {
    Glyph g{name, {}};
    try {
      for (const auto& stroke : strokes) {
        Polyline line;
        for (const auto& pt : stroke) line.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        g.strokes.push_back(std::move(line));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SyntaxError, "icon '" + name + "': " + e.what());
    }
    add(std::move(g));
  }
}

void IconLibrary::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open glyph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  load_json(buf.str());
}

const Glyph& lookup_icon(const std::string& name) {
  static const IconLibrary lib = IconLibrary::builtin();
  return lib.lookup(name);
}

TextureLibrary TextureLibrary::builtin(const IconLibrary& icons) {
  TextureLibrary lib;
  lib.add("solid", SolidFill{});
  lib.add("hatch", TexturePattern{HatchPattern{0.0, 1.5}});
  lib.add("hatch45", TexturePattern{HatchPattern{45.0, 1.5}});
  lib.add("vhatch", TexturePattern{HatchPattern{90.0, 1.5}});
  lib.add("crosshatch", TexturePattern{CrosshatchPattern{45.0, 2.0}});
  lib.add("dots", TexturePattern{DotPattern{0.8, 2.0}});
  lib.add("large-dots", TexturePattern{DotPattern{3.0, 4.5}});
  for (const auto& name : icons.names())
    lib.add(name, TexturePattern{IconPattern{icons.lookup(name), 6.0, 7.0}});
  return lib;
}

const TextureEntry& TextureLibrary::lookup(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(ErrorCode::UnknownTexture, "no texture named '" + id + "'");
  return it->second;
}

void TextureLibrary::add(const std::string& id, TextureEntry entry) {
  if (auto* p = std::get_if<TexturePattern>(&entry)) validate_pattern(*p);
  entries_[id] = std::move(entry);
}

std::vector<std::string> TextureLibrary::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

TextureEntry TextureLibrary::parse_entry(const json& doc, const IconLibrary& icons) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw Error(ErrorCode::SyntaxError, "texture definition needs a string \"kind\"");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "solid") return SolidFill{};
  if (kind == "hatch")
    return TexturePattern{HatchPattern{number(doc, "angle_deg", 0.0), number(doc, "spacing_mm", 1.5)}};
  if (kind == "crosshatch")
    return TexturePattern{
        CrosshatchPattern{number(doc, "angle_deg", 45.0), number(doc, "spacing_mm", 2.0)}};
  if (kind == "dots")
    return TexturePattern{DotPattern{number(doc, "diameter_mm", 0.8), number(doc, "spacing_mm", 2.0)}};
  if (kind == "icon") {
    if (!doc.contains("glyph") || !doc["glyph"].is_string())
      throw Error(ErrorCode::SyntaxError, "icon texture needs a \"glyph\" name");
    return TexturePattern{IconPattern{icons.lookup(doc["glyph"].get<std::string>()),
                                      number(doc, "scale_mm", 6.0), number(doc, "spacing_mm", 7.0)}};
  }
  throw Error(ErrorCode::SyntaxError, "unknown texture kind '" + kind + "'");
}

}  // namespace texstitch
