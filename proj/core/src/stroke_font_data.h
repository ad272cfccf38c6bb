#pragma once

#include <array>
#include <vector>

namespace texstitch::detail {

struct FontPoint {
  int x;
  int y;
};

struct RawGlyph {
  int advance;
  std::vector<std::vector<FontPoint>> strokes;
};

/// Printable ASCII 32..126.
extern const std::array<RawGlyph, 95> kSimplexGlyphs;

}  // namespace texstitch::detail
