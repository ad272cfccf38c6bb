#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "texstitch/error.h"
#include "texstitch/texture_engine.h"

using namespace texstitch;

namespace {

const Polygon kSquare = rect_polygon({0, 0, 10, 10});
const Polygon kL{{0, 0}, {10, 0}, {10, 4}, {4, 4}, {4, 10}, {0, 10}};

double total_length(const FillPrimitives& f) {
  double sum = 0.0;
  for (const auto& p : f.polylines) sum += polyline_length(p);
  return sum;
}

}  // namespace

TEST(TextureEngine, HorizontalHatchOnSquare) {
  const FillPrimitives f = fill_region(kSquare, HatchPattern{0.0, 2.0});
  ASSERT_EQ(f.polylines.size(), 5u);
  for (size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(f.polylines[i].front().y, 1.0 + 2.0 * static_cast<double>(i), 1e-9);
    EXPECT_NEAR(polyline_length(f.polylines[i]), 10.0, 1e-9);
  }
  ASSERT_EQ(f.line_families.size(), 1u);
  EXPECT_TRUE(f.stamps.empty());
}

TEST(TextureEngine, DotsOnSquareFormAFiveByFiveGrid) {
  const FillPrimitives f = fill_region(kSquare, DotPattern{0.8, 2.0});
  ASSERT_EQ(f.stamps.size(), 25u);
  EXPECT_EQ(f.stamps.front().center, (Vec2{1, 1}));
  EXPECT_EQ(f.stamps.back().center, (Vec2{9, 9}));
}

TEST(TextureEngine, DiagonalHatchOnLShapeMatchesSampledClipping) {
  const FillPrimitives f = fill_region(kL, HatchPattern{45.0, 2.0});
  const Vec2 dir = direction_from_angle(45.0);
  const Vec2 normal{-dir.y, dir.x};
  // Oracle: for every line offset, walk it in 1 um steps and collect inside runs.
  double lo = 1e9;
  double hi = -1e9;
  for (const Vec2& v : kL) {
    lo = std::min(lo, dot(v, normal));
    hi = std::max(hi, dot(v, normal));
  }
  std::vector<std::pair<Vec2, Vec2>> oracle;
  for (double s = lo + 1.0; s < hi; s += 2.0) {
    bool inside = false;
    Vec2 start;
    for (double t = -20.0; t <= 20.0; t += 0.001) {
      const Vec2 p = dir * t + normal * s;
      const bool in = point_in_polygon(p, kL);
      if (in && !inside) start = p;
      if (!in && inside) oracle.emplace_back(start, dir * (t - 0.001) + normal * s);
      inside = in;
    }
  }
  ASSERT_EQ(f.polylines.size(), oracle.size());
  for (size_t i = 0; i < oracle.size(); ++i) {
    EXPECT_NEAR(distance(f.polylines[i].front(), oracle[i].first), 0.0, 0.003);
    EXPECT_NEAR(distance(f.polylines[i].back(), oracle[i].second), 0.0, 0.003);
  }
}

TEST(TextureEngine, CrosshatchIsTwoHatches) {
  const FillPrimitives cross = fill_region(kSquare, CrosshatchPattern{30.0, 2.0});
  const FillPrimitives a = fill_region(kSquare, HatchPattern{30.0, 2.0});
  const FillPrimitives b = fill_region(kSquare, HatchPattern{120.0, 2.0});
  EXPECT_EQ(cross.polylines.size(), a.polylines.size() + b.polylines.size());
  EXPECT_EQ(cross.line_families.size(), 2u);
}

TEST(TextureEngine, PrimitivesStayInsideRegion) {
  const Glyph& carrot = lookup_icon("carrot");
  const std::vector<TexturePattern> patterns{HatchPattern{10, 1.0}, CrosshatchPattern{45, 1.3},
                                             DotPattern{1.0, 1.7}, IconPattern{carrot, 3.0, 3.5}};
  for (const auto& pattern : patterns) {
    const FillPrimitives f = fill_region(kL, pattern);
    for (const auto& line : f.polylines)
      for (size_t i = 0; i + 1 < line.size(); ++i)
        for (int k = 0; k <= 20; ++k)
          EXPECT_TRUE(point_in_polygon_or_near(lerp(line[i], line[i + 1], k / 20.0), kL, 1e-9));
    for (const auto& st : f.stamps) {
      if (st.kind == StampKind::Dot) {
        EXPECT_TRUE(point_in_polygon(st.center, kL));
        EXPECT_GE(point_polygon_boundary_distance(st.center, kL), st.size_mm / 2 - 1e-9);
      } else {
        for (const auto& stroke : place_glyph(carrot, st.center, st.size_mm))
          for (const Vec2& p : stroke) EXPECT_TRUE(point_in_polygon_or_near(p, kL, 1e-9));
      }
    }
  }
}

TEST(TextureEngine, HatchLengthDoesNotGrowWithSpacing) {
  double previous = 1e18;
  for (double spacing = 0.5; spacing <= 5.0; spacing += 0.25) {
    const double len = total_length(fill_region(kL, HatchPattern{33.0, spacing}));
    EXPECT_LE(len, previous + 1e-9) << spacing;
    previous = len;
  }
}

TEST(TextureEngine, FillIsTranslationEquivariant) {
  const Vec2 shift{13.25, -7.5};
  for (const TexturePattern& pattern :
       std::vector<TexturePattern>{HatchPattern{20, 1.5}, DotPattern{0.8, 2.0}, IconPattern{lookup_icon("olive"), 3, 4}}) {
    const FillPrimitives a = fill_region(kL, pattern);
    const FillPrimitives b = fill_region(translated(kL, shift), pattern);
    ASSERT_EQ(a.polylines.size(), b.polylines.size());
    ASSERT_EQ(a.stamps.size(), b.stamps.size());
    for (size_t i = 0; i < a.polylines.size(); ++i)
      for (size_t k = 0; k < a.polylines[i].size(); ++k)
        EXPECT_NEAR(distance(a.polylines[i][k] + shift, b.polylines[i][k]), 0.0, 1e-9);
    for (size_t i = 0; i < a.stamps.size(); ++i)
      EXPECT_NEAR(distance(a.stamps[i].center + shift, b.stamps[i].center), 0.0, 1e-9);
  }
}

TEST(TextureEngine, DegenerateRegionIsRejected) {
  const Polygon flat{{0, 0}, {5, 0}, {10, 0}};
  try {
    fill_region(flat, HatchPattern{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateRegion);
  }
}

TEST(TextureEngine, InvalidPatternParameters) {
  EXPECT_THROW(validate_pattern(HatchPattern{0.0, 0.0}), Error);
  EXPECT_THROW(validate_pattern(DotPattern{-1.0, 2.0}), Error);
  EXPECT_NO_THROW(validate_pattern(DotPattern{0.0, 2.0}));
  EXPECT_THROW(validate_pattern(IconPattern{lookup_icon("corn"), 0.0, 2.0}), Error);
}

TEST(IconLibrary, BuiltinVegetables) {
  for (const char* name : {"carrot", "celery", "corn", "eggplant", "mushroom", "olive", "tomato"}) {
    const Glyph& g = lookup_icon(name);
    ASSERT_FALSE(g.strokes.empty()) << name;
    for (const auto& stroke : g.strokes)
      for (const Vec2& p : stroke) EXPECT_TRUE(Rect({0, 0, 1, 1}).contains(p)) << name;
  }
  EXPECT_GE(lookup_icon("tomato").strokes.size(), 2u);
  for (const char* alias : {"circle", "square", "triangle"}) EXPECT_NO_THROW(lookup_icon(alias));
}

TEST(IconLibrary, UnknownIcon) {
  try {
    lookup_icon("durian");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTexture);
  }
}

TEST(IconLibrary, LoadsGlyphDocuments) {
  IconLibrary lib = IconLibrary::builtin();
  lib.load_json(R"({"icons": {"leaf": [[[0.1, 0.1], [0.9, 0.9]], [[0.2, 0.8], [0.5, 0.5]]]}})");
  EXPECT_EQ(lib.lookup("leaf").strokes.size(), 2u);
  EXPECT_THROW(lib.load_json(R"({"icons": {"big": [[[0, 0], [2, 2]]]}})"), Error);
  EXPECT_THROW(lib.load_json(R"({"glyphs": {}})"), Error);
  EXPECT_THROW(lib.load_json("{"), Error);
}

TEST(TextureLibrary, BuiltinEntriesAndParsing) {
  const TextureLibrary lib = TextureLibrary::builtin();
  EXPECT_TRUE(std::holds_alternative<SolidFill>(lib.lookup("solid")));
  EXPECT_TRUE(lib.contains("tomato"));
  EXPECT_THROW(lib.lookup("plaid"), Error);
  const IconLibrary icons = IconLibrary::builtin();
  const TextureEntry e = TextureLibrary::parse_entry(nlohmann::json::parse(R"({"kind": "dots", "diameter_mm": 1.2})"), icons);
  const auto& dots = std::get<DotPattern>(std::get<TexturePattern>(e));
  EXPECT_DOUBLE_EQ(dots.diameter_mm, 1.2);
  EXPECT_DOUBLE_EQ(dots.spacing_mm, 2.0);
  EXPECT_THROW(TextureLibrary::parse_entry(nlohmann::json::parse(R"({"kind": "zigzag"})"), icons), Error);
  EXPECT_THROW(TextureLibrary::parse_entry(nlohmann::json::parse(R"({"kind": "icon", "glyph": "durian"})"), icons), Error);
}
