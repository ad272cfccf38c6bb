#include <gtest/gtest.h>

#include <regex>

#include "texstitch/error.h"
#include "texstitch/lint.h"
#include "texstitch/pipeline.h"
#include "texstitch/preview_render.h"
#include "texstitch/stitch_planner.h"

using namespace texstitch;

namespace {

size_t count_matches(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

StitchPlan straight_run() {
  StitchPlan p{"run", {}};
  p.blocks.push_back({BlockRole::Outline, {{0, 0, StitchKind::Normal}, {50, 0, StitchKind::Normal}, {100, 0, StitchKind::Normal}}});
  return p;
}

const CompiledChart& family() {
  static const CompiledChart chart = [] {
    const TextureLibrary lib = TextureLibrary::builtin();
    return compile_chart(load_chart_spec(TEXSTITCH_TEST_DATA_DIR "/family.json", lib), lib);
  }();
  return chart;
}

StitchPlan texture_plan(const TexturePattern& pattern) {
  const DecomposedScene scene = centered(texture_scene(pattern, rect_polygon({0, 0, 10, 10})));
  return order_blocks(plan_components(scene, PlannerParams{}), PlannerParams{});
}

}  // namespace

TEST(Svg, ThreeStitchBlockIsOnePathOfTwoSegments) {
  StitchPlan p{"", {}};
  p.blocks.push_back({BlockRole::Outline, {{0, 0, StitchKind::Normal}, {10, 0, StitchKind::Normal}, {10, 10, StitchKind::Normal}}});
  const std::string svg = render_svg(p);
  EXPECT_EQ(count_matches(svg, "<path "), 1u);
  const std::smatch m = [&] {
    std::smatch out;
    std::regex_search(svg, out, std::regex(R"re(d="([^"]*)")re"));
    return out;
  }();
  EXPECT_EQ(count_matches(m[1].str(), "L "), 2u);
  EXPECT_NE(svg.find(R"(width="1mm" height="1mm")"), std::string::npos);
}

TEST(Svg, EmptyPlanHasNoPaths) {
  const std::string svg = render_svg(StitchPlan{});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_matches(svg, "<path"), 0u);
}

TEST(Svg, JumpsTrimsAndOptions) {
  StitchPlan p = straight_run();
  p.blocks.push_back({BlockRole::Text, {{100, 0, StitchKind::Trim}, {200, 0, StitchKind::Jump}, {200, 0, StitchKind::Normal}, {200, 30, StitchKind::Normal}}});
  const std::string svg = render_svg(p);
  EXPECT_EQ(count_matches(svg, R"(class="block")"), 2u);
  EXPECT_EQ(count_matches(svg, R"(class="jump")"), 1u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(count_matches(svg, R"(class="trim")"), 1u);
  EXPECT_NE(svg.find("&#x2702;"), std::string::npos);
  EXPECT_NE(svg.find(R"(width="20mm" height="3mm")"), std::string::npos);

  SvgOptions quiet;
  quiet.show_jumps = false;
  quiet.show_points = true;
  const std::string other = render_svg(p, quiet);
  EXPECT_EQ(count_matches(other, R"(class="jump")"), 0u);
  EXPECT_GT(count_matches(other, "<circle"), 0u);
  EXPECT_EQ(render_svg(p), svg);
}

TEST(Svg, FamilyChartHasAFillGroupPerBar) {
  const std::string svg = render_svg(family().plan);
  EXPECT_GE(count_matches(svg, R"(data-role="texture_fill")"), 7u);
  EXPECT_EQ(count_matches(svg, R"(class="block")"), family().plan.blocks.size());
}

TEST(Density, StraightRunFillsTenCells) {
  const DensityGrid g = render_density(straight_run(), 1.0);
  ASSERT_EQ(g.cols, 10);
  int filled = 0;
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      if (g.thread_at(c, r) > 0) {
        ++filled;
        EXPECT_NEAR(g.thread_at(c, r), 1.0, 1e-9);
      }
  EXPECT_EQ(filled, 10);
  EXPECT_DOUBLE_EQ(g.total_penalty(), 0.0);
}

TEST(Density, EmptyPlanIsAllZero) {
  const DensityGrid g = render_density(StitchPlan{}, 1.0);
  EXPECT_DOUBLE_EQ(g.total_thread_mm(), 0.0);
  EXPECT_DOUBLE_EQ(g.total_penalty(), 0.0);
  EXPECT_THROW(render_density(StitchPlan{}, 0.0), Error);
}

TEST(Density, CellsSumToThreadLength) {
  const double total = compute_stats(family().plan).total_thread_length_mm;
  for (double cell : {0.5, 1.0, 2.5, 7.0}) {
    const DensityGrid g = render_density(family().plan, cell);
    EXPECT_NEAR(g.total_thread_mm(), total, total * 0.01) << cell;
  }
}

TEST(Density, PenaltiesFollowOptions) {
  StitchPlan p = straight_run();
  p.blocks.push_back({BlockRole::Text, {{100, 0, StitchKind::Trim}, {200, 0, StitchKind::Jump}, {200, 0, StitchKind::Normal}}});
  EXPECT_DOUBLE_EQ(render_density(p, 1.0).total_penalty(), 4.0);
  DensityOptions o;
  o.trim_penalty = 10;
  o.jump_penalty = 0;
  EXPECT_DOUBLE_EQ(render_density(p, 1.0, o).total_penalty(), 10.0);
}

TEST(Density, DotsAreMessierThanHatch) {
  const StitchPlan dots = texture_plan(DotPattern{0.8, 2.0});
  const StitchPlan hatch = texture_plan(HatchPattern{0.0, 1.5});
  const double dots_pen = render_density(dots, 1.0).total_penalty();
  const double hatch_pen = render_density(hatch, 1.0).total_penalty();
  EXPECT_GT(dots_pen, hatch_pen);
  EXPECT_GE(dots_pen, 24.0);  // at least one jump between consecutive dots
}

TEST(Density, HeatMapIsDeterministic) {
  const DensityGrid g = render_density(family().plan, 2.0);
  const std::string svg = density_svg(g);
  EXPECT_EQ(svg, density_svg(render_density(family().plan, 2.0)));
  EXPECT_NE(svg.find("<rect"), std::string::npos);
}
