#include "texstitch/stroke_font.h"

#include <cstdio>

#include "stroke_font_data.h"

namespace texstitch {

namespace {

constexpr char32_t kFirst = 32;
constexpr char32_t kLast = 126;
constexpr double kBoxAdvance = 16.0;

const detail::RawGlyph* raw(char32_t c) {
  if (c < kFirst || c > kLast) return nullptr;
  return &detail::kSimplexGlyphs[c - kFirst];
}

std::vector<Polyline> box_glyph() { return {{{3, 0}, {13, 0}, {13, 21}, {3, 21}, {3, 0}}}; }

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  for (size_t i = 0; i < text.size();) {
    const auto b = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      cp = b & 0x1F;
      extra = 1;
    } else if ((b & 0xF0) == 0xE0) {
      cp = b & 0x0F;
      extra = 2;
    } else if ((b & 0xF8) == 0xF0) {
      cp = b & 0x07;
      extra = 3;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + static_cast<size_t>(extra) >= text.size()) {
      out.push_back(0xFFFD);
      break;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      const auto cb = static_cast<unsigned char>(text[i + static_cast<size_t>(k)]);
      if ((cb & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cb & 0x3F);
    }
    out.push_back(ok ? cp : 0xFFFD);
    i += ok ? static_cast<size_t>(extra) + 1 : 1;
  }
  return out;
}

const StrokeFont& StrokeFont::simplex() {
  static const StrokeFont font;
  return font;
}

bool StrokeFont::has_glyph(char32_t c) const { return raw(c) != nullptr; }

std::vector<Polyline> StrokeFont::glyph_strokes(char32_t c) const {
  const auto* g = raw(c);
  if (g == nullptr) return box_glyph();
  std::vector<Polyline> out;
  out.reserve(g->strokes.size());
  for (const auto& stroke : g->strokes) {
    Polyline line;
    line.reserve(stroke.size());
    for (const auto& p : stroke) line.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    out.push_back(std::move(line));
  }
  return out;
}

double StrokeFont::advance(char32_t c) const {
  const auto* g = raw(c);
  return g ? static_cast<double>(g->advance) : kBoxAdvance;
}

double StrokeFont::text_width_mm(std::string_view utf8, double height_mm) const {
  double units = 0.0;
  for (char32_t c : decode_utf8(utf8)) units += advance(c);
  return units * height_mm / cap_height();
}

std::vector<Polyline> StrokeFont::render(std::string_view utf8, Vec2 origin, double height_mm,
                                         double rotation_deg, std::vector<Warning>* warnings) const {
  const double scale = height_mm / cap_height();
  const Vec2 u = direction_from_angle(rotation_deg);
  const Vec2 v{-u.y, u.x};
  std::vector<Polyline> out;
  double pen = 0.0;
  for (char32_t c : decode_utf8(utf8)) {
    if (!has_glyph(c) && warnings) {
      warnings->push_back({"MissingGlyph", "no glyph for U+" + [&] {
                             char buf[16];
                             std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(c));
                             return std::string(buf);
                           }() + "; substituted a box"});
    }
    for (auto& stroke : glyph_strokes(c)) {
      Polyline placed;
      placed.reserve(stroke.size());
      for (const auto& p : stroke) {
        const double lx = (pen + p.x) * scale;
        const double ly = p.y * scale;
        placed.push_back(origin + u * lx + v * ly);
      }
      out.push_back(std::move(placed));
    }
    pen += advance(c);
  }
  return out;
}

}  // namespace texstitch
