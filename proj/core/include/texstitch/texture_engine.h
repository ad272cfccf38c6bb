#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "texstitch/geometry.h"

namespace texstitch {

/// Single-stroke figure in the unit box [0,1]^2, y up.
struct Glyph {
  std::string name;
  std::vector<Polyline> strokes;

  bool operator==(const Glyph&) const = default;
};

struct HatchPattern {
  double angle_deg = 0.0;
  double spacing_mm = 1.5;
};

struct CrosshatchPattern {
  double angle_deg = 45.0;
  double spacing_mm = 2.0;
};

struct DotPattern {
  double diameter_mm = 0.8;
  double spacing_mm = 2.0;
};

struct IconPattern {
  Glyph glyph;
  double scale_mm = 6.0;
  double spacing_mm = 7.0;
};

using TexturePattern = std::variant<HatchPattern, CrosshatchPattern, DotPattern, IconPattern>;

/// Throws RangeError when a pattern parameter is out of range.
void validate_pattern(const TexturePattern& pattern);
std::string describe(const TexturePattern& pattern);

enum class StampKind { Dot, Icon };

struct Stamp {
  Vec2 center;
  StampKind kind = StampKind::Dot;
  double size_mm = 0.0;  // dot diameter, or icon box edge
};

struct FillPrimitives {
  std::vector<Polyline> polylines;
  std::vector<Stamp> stamps;
  /// Scan structure behind `polylines`, one entry per line direction.
  std::vector<ScanRows> line_families;
  /// Shared by every icon stamp.
  std::optional<Glyph> glyph;

  bool empty() const { return polylines.empty() && stamps.empty(); }
};

/// Clip a texture to `region`.
///
/// Hatch lines are placed by `scan_rows` and clipped chord by chord;
/// crosshatch is the union of hatches at `angle` and `angle + 90`. Dots and
/// icons sit on a square grid anchored at the region's bounding-box corner
/// plus half a pitch, and a stamp is kept only when it lies entirely inside
/// the region (stamps are never clipped).
///
/// Throws DegenerateRegion for regions without area.
FillPrimitives fill_region(const Polygon& region, const TexturePattern& pattern);

/// Icon strokes placed at a stamp, in mm.
std::vector<Polyline> place_glyph(const Glyph& glyph, Vec2 center, double scale_mm);

class IconLibrary {
 public:
  /// Vegetables used by the family chart plus a few geometric shapes.
  static IconLibrary builtin();

  /// Throws UnknownTexture when absent.
  const Glyph& lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return glyphs_.contains(name); }
  std::vector<std::string> names() const;

  /// Throws RangeError if any stroke leaves the unit box or is empty.
  void add(Glyph glyph);

  /// Merge icons from a glyph document:
  /// `{"icons": {"name": [[[x, y], ...], ...]}}`. Throws SyntaxError.
  void load_json(const std::string& text);
  void load_file(const std::string& path);

 private:
  std::map<std::string, Glyph> glyphs_;
};

const Glyph& lookup_icon(const std::string& name);

/// Marker for bars drawn as filled areas rather than textures.
struct SolidFill {
  bool operator==(const SolidFill&) const = default;
};

using TextureEntry = std::variant<SolidFill, TexturePattern>;

/// Named textures available to chart specs.
class TextureLibrary {
 public:
  /// "solid", geometric textures ("hatch", "hatch45", "vhatch", "crosshatch",
  /// "dots", "large-dots") and one icon texture per icon in `icons`.
  static TextureLibrary builtin(const IconLibrary& icons = IconLibrary::builtin());

  bool contains(const std::string& id) const { return entries_.contains(id); }
  /// Throws UnknownTexture when absent.
  const TextureEntry& lookup(const std::string& id) const;
  void add(const std::string& id, TextureEntry entry);
  std::vector<std::string> ids() const;

  /// Parse `{"kind": "hatch"|"crosshatch"|"dots"|"icon"|"solid", ...}`.
  /// Icon entries name a glyph in `icons`.
  static TextureEntry parse_entry(const nlohmann::json& doc, const IconLibrary& icons);

 private:
  std::map<std::string, TextureEntry> entries_;
};

}  // namespace texstitch
