#include <gtest/gtest.h>

#include "texstitch/error.h"
#include "texstitch/stroke_font.h"

using namespace texstitch;

TEST(StrokeFont, CapitalAHasThreeStrokes) {
  const auto& font = StrokeFont::simplex();
  EXPECT_EQ(font.glyph_strokes(U'A').size(), 3u);
  EXPECT_TRUE(font.glyph_strokes(U' ').empty());
  EXPECT_GT(font.advance(U'W'), font.advance(U'i'));
}

TEST(StrokeFont, RenderScalesToCapHeight) {
  const auto& font = StrokeFont::simplex();
  const auto strokes = font.render("H", {10, 20}, 7.0, 0.0);
  ASSERT_FALSE(strokes.empty());
  double top = -1e9;
  double bottom = 1e9;
  for (const auto& s : strokes)
    for (const Vec2& p : s) {
      top = std::max(top, p.y);
      bottom = std::min(bottom, p.y);
    }
  EXPECT_NEAR(bottom, 20.0, 1e-9);
  EXPECT_NEAR(top, 27.0, 1e-9);
  EXPECT_NEAR(font.text_width_mm("HH", 7.0), 2.0 * font.text_width_mm("H", 7.0), 1e-9);
}

TEST(StrokeFont, RotationTurnsTextAboutItsOrigin) {
  const auto& font = StrokeFont::simplex();
  const auto flat = font.render("L", {0, 0}, 5.0, 0.0);
  const auto up = font.render("L", {0, 0}, 5.0, 90.0);
  ASSERT_EQ(flat.size(), up.size());
  for (size_t i = 0; i < flat.size(); ++i)
    for (size_t k = 0; k < flat[i].size(); ++k) {
      EXPECT_NEAR(up[i][k].x, -flat[i][k].y, 1e-9);
      EXPECT_NEAR(up[i][k].y, flat[i][k].x, 1e-9);
    }
}

TEST(StrokeFont, MissingGlyphIsBoxedAndReported) {
  const auto& font = StrokeFont::simplex();
  EXPECT_FALSE(font.has_glyph(U'é'));
  std::vector<Warning> warnings;
  const auto strokes = font.render("caf\xc3\xa9", {0, 0}, 5.0, 0.0, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].code, "MissingGlyph");
  EXPECT_NE(warnings[0].message.find("U+00E9"), std::string::npos);
  EXPECT_FALSE(strokes.empty());
}

TEST(StrokeFont, DecodeUtf8) {
  EXPECT_EQ(decode_utf8("a\xc3\xa9\xe2\x82\xac"), U"aé€");
  EXPECT_EQ(decode_utf8("\xff"), U"�");
}
