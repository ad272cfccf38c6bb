#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "texstitch/error.h"
#include "texstitch/geometry.h"

namespace texstitch {

/// A single-stroke (engraving style) font. Glyph units have the baseline at
/// y = 0 and capitals reaching y = cap_height().
class StrokeFont {
 public:
  /// Hershey Simplex Roman, printable ASCII.
  static const StrokeFont& simplex();

  static constexpr double cap_height() { return 21.0; }
  static constexpr double descent() { return 7.0; }

  bool has_glyph(char32_t c) const;
  /// Strokes of `c` in font units; a box glyph for characters the font lacks.
  std::vector<Polyline> glyph_strokes(char32_t c) const;
  double advance(char32_t c) const;

  /// Width in mm when capitals are `height_mm` tall.
  double text_width_mm(std::string_view utf8, double height_mm) const;

  /// Strokes for a whole string, in mm. `origin` is the start of the
  /// baseline; the text is rotated by `rotation_deg` about it. Characters
  /// without a glyph are drawn as a box and reported as MissingGlyph.
  std::vector<Polyline> render(std::string_view utf8, Vec2 origin, double height_mm, double rotation_deg,
                               std::vector<Warning>* warnings = nullptr) const;
};

/// Decode UTF-8; malformed bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view text);

}  // namespace texstitch
