// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.h"
#include "texstitch/codec_dst.h"
#include "texstitch/lint.h"
#include "texstitch/pipeline.h"
#include "texstitch/preview_render.h"

using namespace texstitch;
namespace gen = texstitch::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string num(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Plans produced anywhere in this run, checked together by criterion 5.
std::vector<std::pair<std::string, StitchPlan>> g_plans;

const TextureLibrary& textures() {
  static const TextureLibrary lib = TextureLibrary::builtin();
  return lib;
}

ChartSpec family_spec() {
  ChartSpec spec;
  spec.title = "Family vegetables";
  spec.axis = {0.0, 5.0, 1.0};
  spec.plot = {80.0, 50.0, 3.0, 4.0};
  spec.label_height_mm = 2.5;
  const std::vector<std::pair<std::string, double>> table{{"carrots", 4.33}, {"celery", 2.33}, {"corn", 4.11},
                                                          {"eggplant", 2.78}, {"mushrooms", 4.00}, {"olives", 2.56},
                                                          {"tomatos", 3.89}};
  const std::vector<std::string> icons{"carrot", "celery", "corn", "eggplant", "mushroom", "olive", "tomato"};
  for (size_t i = 0; i < table.size(); ++i) spec.categories.push_back({table[i].first, table[i].second, icons[i]});
  validate_chart_spec(spec, textures());
  return spec;
}

// 1. Per bar, the vertical extent of the stitches of its fill and outline
// blocks must equal value / axis range * plot height within 0.2 mm.
Outcome end_to_end() {
  Outcome o;
  const ChartSpec spec = family_spec();
  const auto t0 = std::chrono::steady_clock::now();
  const CompiledChart chart = compile_chart(spec, textures());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_plans.emplace_back("family", chart.plan);

  std::vector<Rect> bars;
  for (const auto& outline : chart.decomposed.outlines)
    if (outline.role == ElementRole::BarOutline) bars.push_back(bounding_box(outline.path));
  if (bars.size() != spec.categories.size()) {
    fail(o, "expected " + std::to_string(spec.categories.size()) + " bar outlines, got " + std::to_string(bars.size()));
    return o;
  }
  std::vector<double> lo(bars.size(), 1e18);
  std::vector<double> hi(bars.size(), -1e18);
  std::vector<double> fill_hi(bars.size(), -1e18);
  for (const auto& block : chart.plan.blocks) {
    if (block.role != BlockRole::TextureFill && block.role != BlockRole::Outline) continue;
    for (const auto& s : block.stitches) {
      if (s.kind != StitchKind::Normal) continue;
      const double x = to_mm(s.x);
      const double y = to_mm(s.y);
      for (size_t b = 0; b < bars.size(); ++b) {
        if (x < bars[b].x0 - 0.1 || x > bars[b].x1 + 0.1) continue;
        lo[b] = std::min(lo[b], y);
        hi[b] = std::max(hi[b], y);
        if (block.role == BlockRole::TextureFill) fill_hi[b] = std::max(fill_hi[b], y);
      }
    }
  }
  const double scale = spec.plot.height_mm / (spec.axis.max - spec.axis.min);
  double worst = 0.0;
  std::string extents;
  for (size_t b = 0; b < bars.size(); ++b) {
    const double expected = (spec.categories[b].value - spec.axis.min) * scale;
    const double got = hi[b] - lo[b];
    worst = std::max(worst, std::abs(got - expected));
    extents += (b ? " " : "") + num(got, 1);
    if (std::abs(got - expected) > 0.2)
      fail(o, spec.categories[b].name + " extent " + num(got) + " mm, expected " + num(expected) + " mm");
    if (fill_hi[b] > hi[b] + 1e-9) fail(o, spec.categories[b].name + " fill rises above its outline");
  }
  if (seconds >= 5.0) fail(o, "compile took " + num(seconds) + " s");
  if (o.pass)
    o.detail = "bar extents [" + extents + "] mm, max error " + num(worst, 2) + " mm, compile " + num(seconds * 1000, 1) + " ms";
  return o;
}

// 2. decode(encode(p)) == p on 1000 random plans; header ST and extents
// equal recomputed statistics.
Outcome dst_round_trip() {
  Outcome o;
  std::mt19937 rng(20240601);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const StitchPlan p = gen::random_plan(rng);
    const auto bytes = encode_dst(p);
    if (decode_dst(bytes) != p) fail(o, "plan " + std::to_string(i) + " did not survive the round trip");
    const PlanStats s = compute_stats(p);
    const DstHeader h = decode_dst_header(bytes);
    if (static_cast<size_t>(h.stitch_count) != s.stitch_count || h.plus_x != s.bounds.x1 || h.minus_x != -s.bounds.x0 ||
        h.plus_y != s.bounds.y1 || h.minus_y != -s.bounds.y0)
      fail(o, "plan " + std::to_string(i) + " header disagrees with its statistics");
    if (bytes.size() != kDstHeaderSize + 3 * (s.stitch_count + 1)) fail(o, "plan " + std::to_string(i) + " record count");
    g_plans.emplace_back("random " + std::to_string(i), p);
  }
  if (o.pass) o.detail = "1000 random plans round-tripped, headers consistent";
  return o;
}

// 3. Every delta, the end record, colour change and trim against the table
// written by pyembroidery.
Outcome dst_bit_exact() {
  Outcome o;
  std::vector<uint8_t> table;
  try {
    table = read_file_bytes(TEXSTITCH_TEST_DATA_DIR "/dst_delta_oracle.bin");
  } catch (const Error& e) {
    fail(o, e.what());
    return o;
  }
  constexpr size_t side = 243;
  if (table.size() != 2 * side * side * 3 + 15) {
    fail(o, "oracle table has unexpected size " + std::to_string(table.size()));
    return o;
  }
  size_t compared = 0;
  for (int jump = 0; jump < 2; ++jump)
    for (int dy = -121; dy <= 121; ++dy)
      for (int dx = -121; dx <= 121; ++dx) {
        const size_t i = ((jump ? side * side : 0) + static_cast<size_t>(dy + 121) * side + static_cast<size_t>(dx + 121)) * 3;
        const auto r = encode_dst_record(dx, dy, jump == 1);
        if (r[0] != table[i] || r[1] != table[i + 1] || r[2] != table[i + 2])
          fail(o, "delta (" + std::to_string(dx) + ", " + std::to_string(dy) + ")" + (jump ? " jump" : "") + " differs");
        ++compared;
      }
  const size_t tail = 2 * side * side * 3;
  StitchPlan p{"flags", {}};
  p.blocks.push_back({BlockRole::Unknown, {{0, 0, StitchKind::Normal}}});
  p.blocks.push_back({BlockRole::Unknown,
                      {{0, 0, StitchKind::Trim}, {0, 0, StitchKind::ColorChange}, {60, 0, StitchKind::Jump}, {60, 0, StitchKind::Normal}}});
  const auto bytes = encode_dst(p);
  const auto rec = [&](size_t k) { return std::vector<uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(kDstHeaderSize + 3 * k), bytes.begin() + static_cast<std::ptrdiff_t>(kDstHeaderSize + 3 * k + 3)); };
  const auto ref = [&](size_t off, size_t n) { return std::vector<uint8_t>(table.begin() + static_cast<std::ptrdiff_t>(tail + off), table.begin() + static_cast<std::ptrdiff_t>(tail + off + n)); };
  std::vector<uint8_t> trim;
  for (size_t k = 1; k <= 3; ++k) {
    const auto r = rec(k);
    trim.insert(trim.end(), r.begin(), r.end());
  }
  if (trim != ref(6, 9)) fail(o, "trim records differ");
  if (rec(4) != ref(3, 3)) fail(o, "colour change record differs");
  if (std::vector<uint8_t>(bytes.end() - 3, bytes.end()) != ref(0, 3)) fail(o, "end record differs");
  if (o.pass) o.detail = std::to_string(compared) + " delta records plus end, colour change and trim match the pyembroidery table";
  return o;
}

// Segments bucketed on a square grid for nearest-segment queries.
class SegmentIndex {
 public:
  SegmentIndex(std::vector<std::pair<Vec2, Vec2>> segs, double cell) : segs_(std::move(segs)), cell_(cell) {
    for (size_t i = 0; i < segs_.size(); ++i) {
      const auto& [a, b] = segs_[i];
      const int x0 = key(std::min(a.x, b.x)), x1 = key(std::max(a.x, b.x));
      const int y0 = key(std::min(a.y, b.y)), y1 = key(std::max(a.y, b.y));
      for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y) cells_[{x, y}].push_back(i);
    }
  }

  // Exact when the answer is below the cell size.
  double nearest(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    const int cx = key(p.x), cy = key(p.y);
    for (int x = cx - 1; x <= cx + 1; ++x)
      for (int y = cy - 1; y <= cy + 1; ++y) {
        const auto it = cells_.find({x, y});
        if (it == cells_.end()) continue;
        for (size_t i : it->second) best = std::min(best, point_segment_distance(p, segs_[i].first, segs_[i].second));
      }
    return best;
  }

 private:
  int key(double v) const { return static_cast<int>(std::floor(v / cell_)); }
  std::vector<std::pair<Vec2, Vec2>> segs_;
  double cell_;
  std::map<std::pair<int, int>, std::vector<size_t>> cells_;
};

// 4. Every interior point of a 0.2 mm grid within spacing / 2 + 0.1 mm of a
// fill stitch, on 100 random convex polygons.
Outcome fill_coverage() {
  Outcome o;
  std::mt19937 rng(4242);
  const PlannerParams params;
  const double limit = params.fill_row_spacing_mm / 2 + 0.1;
  double worst = 0.0;
  size_t points = 0;
  for (int n = 0; n < 100; ++n) {
    const Polygon poly = gen::random_convex_polygon(rng);
    const StitchPlan plan = order_blocks(std::vector<StitchBlock>{plan_fill(poly, params)}, params);
    g_plans.emplace_back("fill " + std::to_string(n), plan);
    auto segs = gen::stitch_segments(plan);
    segs.erase(segs.begin());  // the move in from the hoop origin
    const SegmentIndex index(std::move(segs), 1.0);
    const Rect box = bounding_box(poly);
    for (double x = std::ceil(box.x0 / 0.2) * 0.2; x <= box.x1; x += 0.2)
      for (double y = std::ceil(box.y0 / 0.2) * 0.2; y <= box.y1; y += 0.2) {
        if (!point_in_polygon({x, y}, poly)) continue;
        ++points;
        const double d = index.nearest({x, y});
        worst = std::max(worst, d);
        if (d > limit) fail(o, "polygon " + std::to_string(n) + ": (" + num(x) + ", " + num(y) + ") is " + num(d) + " mm from the fill");
      }
  }
  if (o.pass) o.detail = std::to_string(points) + " grid points, worst distance " + num(worst) + " mm (limit " + num(limit, 2) + ")";
  return o;
}

// 6. Greedy order never travels further than the given order; ratio to the
// exhaustive optimum is reported.
Outcome ordering(std::vector<double>& ratios) {
  Outcome o;
  std::mt19937 rng(606);
  const PlannerParams params;
  for (int n = 0; n < 200; ++n) {
    const auto blocks = gen::random_blocks(rng, gen::uniform_int(rng, 2, 7));
    std::vector<size_t> perm(blocks.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    const double identity = travel_mm(blocks, perm);
    double optimum = std::numeric_limits<double>::infinity();
    do {
      optimum = std::min(optimum, travel_mm(blocks, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const StitchPlan plan = order_blocks(blocks, params);
    g_plans.emplace_back("order " + std::to_string(n), plan);
    double inner = 0.0;
    for (const auto& b : blocks)
      for (size_t r = 1; r < b.runs.size(); ++r) inner += distance_units(b.runs[r - 1].back(), b.runs[r].front()) / kUnitsPerMm;
    const double greedy = gen::plan_travel_mm(plan) - inner;
    if (greedy > identity + 1e-9) fail(o, "instance " + std::to_string(n) + ": " + num(greedy) + " mm > identity " + num(identity) + " mm");
    if (greedy < optimum - 1e-9) fail(o, "instance " + std::to_string(n) + " beats the exhaustive optimum");
    ratios.push_back(optimum > 0 ? greedy / optimum : 1.0);
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = (sorted[99] + sorted[100]) / 2;
  if (o.pass)
    o.detail = "200 instances, greedy <= identity; greedy/optimum median " + num(median) + ", max " + num(sorted.back()) +
               ", optimal in " + std::to_string(std::count_if(sorted.begin(), sorted.end(), [](double r) { return r < 1 + 1e-9; })) + "/200";
  return o;
}

// 5. Checked last, over every plan generated above plus planner variations.
Outcome feasibility() {
  Outcome o;
  std::vector<std::pair<std::string, PlannerParams>> variants{{"max 2", {}}, {"max 12.1", {}}, {"angle 30", {}}};
  variants[0].second.max_stitch_mm = 2.0;
  variants[1].second.max_stitch_mm = 12.1;
  variants[2].second.fill_angle_deg = 30.0;
  for (const auto& [name, params] : variants) {
    CompileOptions opts;
    opts.planner = params;
    ChartSpec spec = family_spec();
    for (auto& c : spec.categories) c.texture_id = name == "angle 30" ? "solid" : c.texture_id;
    g_plans.emplace_back("family " + name, compile_chart(spec, textures(), opts).plan);
  }
  const double max_normal = PlannerParams{}.max_stitch_mm;
  size_t records = 0;
  for (const auto& [name, plan] : g_plans) {
    try {
      validate_plan(plan);
    } catch (const Error& e) {
      fail(o, name + ": " + e.what());
    }
    StitchPoint pos{0, 0};
    for (const auto& s : flatten(plan)) {
      ++records;
      if (std::abs(s.x - pos.x) > kMaxRecordDelta || std::abs(s.y - pos.y) > kMaxRecordDelta) fail(o, name + ": delta over 121 units");
      pos = s.point();
    }
  }
  // Normal stitch length against the planner that produced the plan.
  auto check_lengths = [&](const std::string& name, const StitchPlan& plan, double max_mm) {
    StitchPoint pos{0, 0};
    bool moved = true;
    for (const auto& s : flatten(plan)) {
      if (s.kind == StitchKind::Normal && !moved && distance_units(pos, s.point()) > (max_mm + 0.05) * kUnitsPerMm + 1e-9)
        fail(o, name + ": normal stitch of " + num(distance_units(pos, s.point()) / kUnitsPerMm) + " mm");
      moved = s.kind != StitchKind::Normal && distance_units(pos, s.point()) > 0;
      if (s.kind == StitchKind::Normal) moved = false;
      pos = s.point();
    }
  };
  for (const auto& [name, plan] : g_plans) {
    if (name.rfind("random", 0) == 0 || name.rfind("order", 0) == 0) continue;  // not planner output
    const double max_mm = name == "family max 2" ? 2.0 : name == "family max 12.1" ? 12.1 : max_normal;
    check_lengths(name, plan, max_mm);
  }
  if (o.pass) o.detail = std::to_string(g_plans.size()) + " plans, " + std::to_string(records) + " records within limits";
  return o;
}

// 7. Ordinal agreement of the texture ranking.
Outcome lint_orderings() {
  Outcome o;
  const Polygon region = rect_polygon({0, 0, 10, 10});
  const auto score_of = [&](const std::vector<TexturePattern>& patterns) {
    std::vector<double> s(patterns.size());
    for (const auto& r : rank_textures(patterns, region)) s[r.index] = r.score;
    return s;
  };
  const auto lines = score_of({HatchPattern{}, DotPattern{}});
  if (!(lines[0] > lines[1])) fail(o, "hatch " + num(lines[0]) + " does not beat dots " + num(lines[1]));
  const auto icons = score_of({IconPattern{lookup_icon("olive")}, IconPattern{lookup_icon("tomato")}});
  if (!(icons[0] > icons[1])) fail(o, "olive " + num(icons[0]) + " does not beat tomato " + num(icons[1]));

  DecomposedScene scene;
  scene.text_elements.push_back({"carrots", {0, 0}, 4.0, 0.0, ElementRole::Label, 0});
  const StitchPlan plan = order_blocks(plan_components(scene, PlannerParams{}), PlannerParams{});
  const size_t small = lint_scene(scene, plan).count("SMALL_TEXT");
  if (small != 1) fail(o, "4 mm label gave " + std::to_string(small) + " SMALL_TEXT findings");
  if (o.pass)
    o.detail = "hatch " + num(lines[0]) + " > dots " + num(lines[1]) + "; olive " + num(icons[0]) + " > tomato " +
               num(icons[1]) + "; 4 mm label flagged SMALL_TEXT";
  return o;
}

// 8. Back-side mess of the dotted fixture against the hatch fixture.
Outcome density_proxy() {
  Outcome o;
  const CompiledChart dots = compile_chart(load_chart_spec(TEXSTITCH_TEST_DATA_DIR "/dots.json", textures()), textures());
  const CompiledChart hatch = compile_chart(load_chart_spec(TEXSTITCH_TEST_DATA_DIR "/hatch_only.json", textures()), textures());
  g_plans.emplace_back("dots fixture", dots.plan);
  g_plans.emplace_back("hatch fixture", hatch.plan);
  const double d = dots.lint.scores.backside_mess;
  const double h = hatch.lint.scores.backside_mess;
  const double ratio = h > 0 ? d / h : std::numeric_limits<double>::infinity();
  if (!(ratio >= 2.0)) fail(o, "backside mess ratio " + num(ratio, 2));
  const double dp = render_density(dots.plan, 1.0).total_penalty();
  const double hp = render_density(hatch.plan, 1.0).total_penalty();
  if (!(dp > hp)) fail(o, "density penalty " + num(dp, 0) + " not above hatch " + num(hp, 0));
  if (o.pass)
    o.detail = "backside mess dots " + num(d, 2) + " vs hatch " + num(h, 2) + " per cm^2 (ratio " + num(ratio, 2) +
               "); density penalty " + num(dp, 0) + " vs " + num(hp, 0);
  return o;
}

}  // namespace

int main() {
  std::vector<double> ratios;
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, end_to_end},
      {2, dst_round_trip},
      {3, dst_bit_exact},
      {4, fill_coverage},
      {6, [&] { return ordering(ratios); }},
      {7, lint_orderings},
      {8, density_proxy},
      {5, feasibility},
  };
  const std::map<int, std::string> titles{{1, "end-to-end family chart"}, {2, "DST round trip"},
                                          {3, "DST bit exactness"},      {4, "fill coverage"},
                                          {5, "feasibility"},            {6, "block ordering"},
                                          {7, "lint ordinal agreement"}, {8, "density proxy"}};
  std::map<int, Outcome> results;
  for (auto& [id, check] : criteria) {
    try {
      results[id] = check();
    } catch (const std::exception& e) {
      results[id] = {false, std::string("exception: ") + e.what()};
    }
  }
  int failures = 0;
  for (const auto& [id, r] : results) {
    std::printf("criterion %d %-24s %s  %s\n", id, titles.at(id).c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
    failures += r.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
