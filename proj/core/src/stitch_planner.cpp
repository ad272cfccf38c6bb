#include "texstitch/stitch_planner.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <optional>

namespace texstitch {

namespace {

constexpr double kSlackUnits = 0.5;        // allowed quantization overshoot, 0.05 mm
constexpr double kCoverageMarginMm = 0.02;  // headroom left for quantization in coverage checks
constexpr int kChainSamplesPerEdge = 16;
constexpr int kDiskSides = 24;

StitchPoint quantize(Vec2 p) { return {to_units(p.x), to_units(p.y)}; }

Polygon open_ring(const Polygon& poly) {
  Polygon out = poly;
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

bool overlaps(const Span& a, const Span& b) { return std::min(a.t1, b.t1) - std::max(a.t0, b.t0) > 1e-9; }

// Consecutive rows whose spans continue each other one-to-one.
struct Section {
  std::vector<const Span*> spans;
};

std::vector<Section> build_sections(const ScanRows& rows) {
  std::vector<Section> sections;
  const std::vector<Span>* prev = nullptr;
  std::vector<int> prev_section;
  for (const auto& row : rows.rows) {
    std::vector<int> cur_section(row.size(), -1);
    if (prev != nullptr && !prev->empty()) {
      std::vector<int> down(prev->size(), 0);
      std::vector<int> up(row.size(), 0);
      std::vector<int> match(row.size(), -1);
      for (size_t i = 0; i < prev->size(); ++i) {
        for (size_t j = 0; j < row.size(); ++j) {
          if (!overlaps((*prev)[i], row[j])) continue;
          ++down[i];
          ++up[j];
          match[j] = static_cast<int>(i);
        }
      }
      for (size_t j = 0; j < row.size(); ++j) {
        if (up[j] == 1 && down[static_cast<size_t>(match[j])] == 1)
          cur_section[j] = prev_section[static_cast<size_t>(match[j])];
      }
    }
    for (size_t j = 0; j < row.size(); ++j) {
      if (cur_section[j] < 0) {
        cur_section[j] = static_cast<int>(sections.size());
        sections.emplace_back();
      }
      sections[static_cast<size_t>(cur_section[j])].spans.push_back(&row[j]);
    }
    prev = &row;
    prev_section = std::move(cur_section);
  }
  return sections;
}

double chain_deviation(std::span<const Vec2> chain, std::span<const std::pair<Vec2, Vec2>> segments) {
  double worst = 0.0;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    for (int k = 0; k <= kChainSamplesPerEdge; ++k) {
      const Vec2 p = lerp(chain[i], chain[i + 1], static_cast<double>(k) / kChainSamplesPerEdge);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [a, b] : segments) best = std::min(best, point_segment_distance(p, a, b));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

class Chainer {
 public:
  Chainer(const Polygon& poly, const ScanRows& rows, const PlannerParams& params, bool coverage)
      : poly_(poly), rows_(rows), params_(params), coverage_(coverage) {}

  struct Entry {
    size_t section = 0;
    bool from_top = false;
    bool at_t0 = true;
  };

  Vec2 entry_point(const Section& sec, const Entry& e) const {
    const Span& sp = e.from_top ? *sec.spans.back() : *sec.spans.front();
    return e.at_t0 ? rows_.start_of(sp) : rows_.end_of(sp);
  }

  // Serpentine traversal of one section. Appends to `path`, whose last
  // point must already be the entry point (or `path` is empty).
  BoundaryPoint traverse(const Section& sec, const Entry& e, Polyline& path) const {
    std::vector<const Span*> spans = sec.spans;
    if (e.from_top) std::reverse(spans.begin(), spans.end());
    const double outward = e.from_top ? 1.0 : -1.0;

    bool side = e.at_t0;  // side the current row is entered from
    const Span& first = *spans.front();
    append(path, pos(first, side));
    if (auto cap = cap_walk(first, side, outward)) {
      append_walk(path, *cap);
      side = !side;
    }
    append(path, pos(first, !side));
    bool exit = !side;

    for (size_t k = 1; k < spans.size(); ++k) {
      const Span& p = *spans[k - 1];
      const Span& c = *spans[k];
      append_walk(path, shortest_boundary_walk(poly_, bp(p, exit), bp(c, exit)));
      append(path, pos(c, !exit));
      const bool far = !exit;
      if (coverage_) {
        const Polyline chain = shortest_boundary_walk(poly_, bp(c, far), bp(p, far));
        const std::pair<Vec2, Vec2> segs[] = {{rows_.start_of(p), rows_.end_of(p)},
                                              {rows_.start_of(c), rows_.end_of(c)}};
        if (chain_deviation(chain, segs) > uncovered_limit()) {
          append_walk(path, chain);
          Polyline back(chain.rbegin(), chain.rend());
          append_walk(path, back);
        }
      }
      exit = far;
    }

    const Span& last = *spans.back();
    if (auto cap = cap_walk(last, exit, -outward)) {
      append_walk(path, *cap);
      exit = !exit;
    }
    return bp(last, exit);
  }

  // Chain all sections, nearest entry first. Returns polylines that are
  // connected along the boundary; a new one starts where a jump is needed.
  void chain(std::vector<Polyline>& runs, std::optional<BoundaryPoint>& at) const {
    const std::vector<Section> sections = build_sections(rows_);
    std::vector<bool> done(sections.size(), false);
    for (size_t count = 0; count < sections.size(); ++count) {
      Entry best;
      bool found = false;
      double best_d = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < sections.size(); ++i) {
        if (done[i]) continue;
        if (!at) {
          best = {i, false, true};
          found = true;
          break;
        }
        const Vec2 here = boundary_position(poly_, *at);
        for (int c = 0; c < 4; ++c) {
          const Entry e{i, c >= 2, c % 2 == 0};
          const double d = distance(here, entry_point(sections[i], e));
          if (d < best_d) {
            best_d = d;
            best = e;
            found = true;
          }
        }
      }
      if (!found) break;
      done[best.section] = true;
      const Section& sec = sections[best.section];
      const Span& entry_span = best.from_top ? *sec.spans.back() : *sec.spans.front();
      const BoundaryPoint entry_bp = bp(entry_span, best.at_t0);
      if (!at || runs.empty()) {
        runs.emplace_back();
      } else {
        const Polyline walk = shortest_boundary_walk(poly_, *at, entry_bp);
        const double direct = distance(walk.front(), walk.back());
        if (polyline_length(walk) <= std::max(2.0 * direct, params_.trim_threshold_mm)) {
          append_walk(runs.back(), walk);
        } else {
          runs.emplace_back();
        }
      }
      at = traverse(sec, best, runs.back());
    }
  }

 private:
  Vec2 pos(const Span& sp, bool t0) const { return t0 ? rows_.start_of(sp) : rows_.end_of(sp); }
  static BoundaryPoint bp(const Span& sp, bool t0) { return t0 ? sp.start : sp.end; }

  double uncovered_limit() const { return params_.fill_row_spacing_mm / 2 + kCoverageMarginMm; }

  static void append(Polyline& path, Vec2 p) {
    if (path.empty() || path.back() != p) path.push_back(p);
  }
  // Boundary vertices crowding the walk's end would displace the row end
  // when short stitches collapse, so they give way.
  void append_walk(Polyline& path, const Polyline& walk) const {
    for (size_t i = 0; i < walk.size(); ++i) {
      const bool inner = i > 0 && i + 1 < walk.size();
      if (inner && distance(walk[i], walk.back()) < params_.min_stitch_mm) continue;
      append(path, walk[i]);
    }
  }

  // Boundary stretch from one end of `sp` to the other that lies entirely
  // on the `outward` side of the row, if the row leaves part of it uncovered.
  std::optional<Polyline> cap_walk(const Span& sp, bool from_t0, double outward) const {
    if (!coverage_) return std::nullopt;
    const std::pair<Vec2, Vec2> seg[] = {{rows_.start_of(sp), rows_.end_of(sp)}};
    for (bool forward : {true, false}) {
      Polyline walk = boundary_walk(poly_, bp(sp, from_t0), bp(sp, !from_t0), forward);
      if (walk.size() < 3) continue;
      bool outer = true;
      for (size_t i = 1; i + 1 < walk.size(); ++i) {
        if ((dot(walk[i], rows_.normal) - sp.s) * outward < -1e-9) {
          outer = false;
          break;
        }
      }
      if (outer && chain_deviation(walk, seg) > uncovered_limit()) return walk;
    }
    return std::nullopt;
  }

  const Polygon& poly_;
  const ScanRows& rows_;
  const PlannerParams& params_;
  bool coverage_;
};

StitchBlock block_from_paths(const std::vector<Polyline>& paths, const PlannerParams& params, BlockRole role) {
  StitchBlock block{role, {}};
  for (const auto& path : paths) {
    if (path.empty()) continue;
    auto pts = running_stitches(path, params);
    if (!pts.empty()) block.runs.push_back(std::move(pts));
  }
  return block;
}

int role_class(BlockRole role) {
  switch (role) {
    case BlockRole::AreaFill: return 0;
    case BlockRole::TextureFill: return 1;
    case BlockRole::Outline: return 2;
    case BlockRole::Text: return 3;
    case BlockRole::Unknown: return 4;
  }
  return 4;
}

class PlanEmitter {
 public:
  explicit PlanEmitter(const PlannerParams& params) : params_(params) {}

  void add(const StitchBlock& block) {
    for (const auto& run : block.runs) add_run(block.role, run);
  }

  std::vector<PlanBlock> take() { return std::move(blocks_); }

 private:
  void add_run(BlockRole role, const std::vector<StitchPoint>& run) {
    if (run.empty()) return;
    const StitchPoint target = run.front();
    const double d = distance_units(pos_, target);
    PlanBlock* block = nullptr;
    if (d == 0.0 && !blocks_.empty()) {
      block = &blocks_.back();
    } else {
      blocks_.push_back({role, {}});
      block = &blocks_.back();
      if (d > 0.0) {
        if (d > params_.trim_threshold_mm * kUnitsPerMm && !first_record_)
          block->stitches.push_back({pos_.x, pos_.y, StitchKind::Trim});
        const int parts = std::max(1, static_cast<int>(std::ceil(d / kMaxRecordDelta - 1e-12)));
        for (int k = 1; k <= parts; ++k) {
          const double f = static_cast<double>(k) / parts;
          const int32_t x = k == parts ? target.x : static_cast<int32_t>(std::lround(pos_.x + (target.x - pos_.x) * f));
          const int32_t y = k == parts ? target.y : static_cast<int32_t>(std::lround(pos_.y + (target.y - pos_.y) * f));
          block->stitches.push_back({x, y, StitchKind::Jump});
        }
      }
      block->stitches.push_back({target.x, target.y, StitchKind::Normal});
    }
    for (size_t i = 1; i < run.size(); ++i) block->stitches.push_back({run[i].x, run[i].y, StitchKind::Normal});
    pos_ = run.back();
    first_record_ = false;
  }

  const PlannerParams& params_;
  std::vector<PlanBlock> blocks_;
  StitchPoint pos_{0, 0};
  bool first_record_ = true;
};

}  // namespace

void validate_params(const PlannerParams& p) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::RangeError, m); };
  if (!(p.min_stitch_mm > 0.0)) fail("min_stitch_mm must be positive");
  if (!(p.min_stitch_mm < p.max_stitch_mm)) fail("min_stitch_mm must be below max_stitch_mm");
  if (!(p.max_stitch_mm <= kMaxRecordDelta / kUnitsPerMm)) fail("max_stitch_mm must be at most 12.1");
  if (!(p.fill_row_spacing_mm > 0.0)) fail("fill_row_spacing_mm must be positive");
  if (!std::isfinite(p.fill_angle_deg)) fail("fill_angle_deg must be finite");
  if (!(p.trim_threshold_mm >= 0.0)) fail("trim_threshold_mm must be non-negative");
  if (!(p.hoop_width_mm > 0.0) || !(p.hoop_height_mm > 0.0)) fail("hoop must have positive size");
  if (!(p.machine_speed_spm > 0.0)) fail("machine_speed_spm must be positive");
}

size_t StitchBlock::point_count() const {
  size_t n = 0;
  for (const auto& r : runs) n += r.size();
  return n;
}

std::vector<StitchPoint> running_stitches(std::span<const Vec2> path, const PlannerParams& params,
                                          std::vector<Warning>* warnings) {
  std::vector<StitchPoint> out;
  if (path.empty()) return out;
  out.push_back(quantize(path.front()));
  if (path.size() == 1) {
    if (warnings) warnings->push_back({"DegeneratePath", "single-point path stitched as one anchor"});
    return out;
  }
  const double max_units = params.max_stitch_mm * kUnitsPerMm;
  const double min_units = params.min_stitch_mm * kUnitsPerMm;
  std::vector<StitchPoint> pts;
  std::vector<Vec2> ideal;
  Vec2 kept = path.front();
  for (size_t i = 1; i < path.size(); ++i) {
    const Vec2 a = path[i - 1];
    const Vec2 b = path[i];
    const double len = distance(a, b);
    const bool last_segment = i + 1 == path.size();
    if (len > 0.0) {
      int n = std::max(1, static_cast<int>(std::ceil(len / params.max_stitch_mm - 1e-9)));
      for (;;) {
        pts.clear();
        ideal.clear();
        for (int k = 1; k <= n; ++k) {
          ideal.push_back(k == n ? b : lerp(a, b, static_cast<double>(k) / n));
          pts.push_back(quantize(ideal.back()));
        }
        StitchPoint prev = out.back();
        bool ok = true;
        for (const auto& q : pts) {
          if (distance_units(prev, q) > max_units + kSlackUnits) ok = false;
          prev = q;
        }
        if (ok) break;
        ++n;
      }
    } else {
      pts.assign(1, quantize(b));
      ideal.assign(1, b);
    }
    // Collapse is judged on the geometry so rounding cannot drop a point
    // that was far enough from its predecessor.
    for (size_t k = 0; k < pts.size(); ++k) {
      const StitchPoint q = pts[k];
      const double d = distance_units(out.back(), q);
      if (d > 0.0 && distance(kept, ideal[k]) * kUnitsPerMm >= min_units) {
        out.push_back(q);
        kept = ideal[k];
      } else if (last_segment && k + 1 == pts.size() && d > 0.0) {
        if (out.size() >= 2 && distance_units(out[out.size() - 2], q) <= max_units + kSlackUnits)
          out.back() = q;
        else
          out.push_back(q);
        kept = ideal[k];
      }
    }
  }
  if (out.size() == 1 && warnings)
    warnings->push_back({"DegeneratePath", "path shorter than the minimum stitch"});
  return out;
}

StitchBlock plan_running(std::span<const Vec2> path, const PlannerParams& params, BlockRole role,
                         std::vector<Warning>* warnings) {
  StitchBlock block{role, {}};
  auto pts = running_stitches(path, params, warnings);
  if (!pts.empty()) block.runs.push_back(std::move(pts));
  return block;
}

StitchBlock plan_fill(const Polygon& region, const PlannerParams& params, BlockRole role) {
  const Polygon poly = open_ring(region);
  if (poly.size() < 3 || std::abs(signed_area(poly)) < 1e-9)
    throw Error(ErrorCode::DegenerateRegion, "fill region has no area");
  ScanRows rows = scan_rows(poly, params.fill_angle_deg, params.fill_row_spacing_mm);
  const bool any = std::any_of(rows.rows.begin(), rows.rows.end(), [](const auto& r) { return !r.empty(); });
  if (!any) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& v : poly) {
      lo = std::min(lo, dot(v, rows.normal));
      hi = std::max(hi, dot(v, rows.normal));
    }
    rows.rows.assign(1, clip_line(poly, rows.dir, rows.normal, (lo + hi) / 2));
  }
  std::vector<Polyline> paths;
  std::optional<BoundaryPoint> at;
  Chainer(poly, rows, params, true).chain(paths, at);
  return block_from_paths(paths, params, role);
}

StitchBlock plan_line_texture(const Polygon& region, std::span<const ScanRows> families,
                              const PlannerParams& params) {
  const Polygon poly = open_ring(region);
  std::vector<Polyline> paths;
  std::optional<BoundaryPoint> at;
  for (const auto& family : families) Chainer(poly, family, params, false).chain(paths, at);
  return block_from_paths(paths, params, BlockRole::TextureFill);
}

double tack_dot_limit_mm(const PlannerParams& params) {
  return std::max(2.0 * params.min_stitch_mm, 3.0 * params.fill_row_spacing_mm);
}

StitchBlock plan_stamp(const Stamp& stamp, const Glyph* glyph, const PlannerParams& params) {
  StitchBlock block{BlockRole::TextureFill, {}};
  if (stamp.kind == StampKind::Dot) {
    if (stamp.size_mm < tack_dot_limit_mm(params)) {
      const double reach = std::max(stamp.size_mm / 2, params.min_stitch_mm);
      const StitchPoint c = quantize(stamp.center);
      const StitchPoint side = quantize(stamp.center + Vec2{reach, 0.0});
      block.runs.push_back({c, side, c});
      return block;
    }
    return plan_fill(regular_polygon(stamp.center, stamp.size_mm / 2, kDiskSides), params, BlockRole::TextureFill);
  }
  if (glyph == nullptr) return block;
  std::vector<Polyline> strokes = place_glyph(*glyph, stamp.center, stamp.size_mm);
  std::erase_if(strokes, [](const Polyline& s) { return s.empty(); });
  std::vector<bool> used(strokes.size(), false);
  size_t current = 0;
  for (size_t n = 0; n < strokes.size(); ++n) {
    if (n > 0) {
      const Vec2 here = strokes[current].back();
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < strokes.size(); ++i) {
        if (used[i]) continue;
        const double d = distance(here, strokes[i].front());
        if (d < best) {
          best = d;
          current = i;
        }
      }
    }
    used[current] = true;
    auto pts = running_stitches(strokes[current], params);
    if (!pts.empty()) block.runs.push_back(std::move(pts));
  }
  return block;
}

std::vector<StitchBlock> plan_text(std::span<const TextElement> elements, const PlannerParams& params,
                                   const StrokeFont& font, std::vector<Warning>* warnings) {
  std::vector<StitchBlock> blocks;
  for (const auto& el : elements) {
    for (const auto& stroke : font.render(el.text, el.position, el.height_mm, el.rotation_deg, warnings)) {
      StitchBlock b = plan_running(stroke, params, BlockRole::Text, warnings);
      if (!b.empty()) blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

double travel_mm(std::span<const StitchBlock> blocks, std::span<const size_t> order, StitchPoint start) {
  double total = 0.0;
  StitchPoint pos = start;
  for (size_t i : order) {
    if (blocks[i].empty()) continue;
    total += distance_units(pos, blocks[i].start());
    pos = blocks[i].end();
  }
  return total / kUnitsPerMm;
}

std::vector<size_t> greedy_order(std::span<const StitchBlock> blocks, StitchPoint start) {
  std::vector<size_t> order;
  std::vector<bool> used(blocks.size(), false);
  StitchPoint pos = start;
  for (size_t n = 0; n < blocks.size(); ++n) {
    size_t pick = blocks.size();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (used[i]) continue;
      const double d = blocks[i].empty() ? 0.0 : distance_units(pos, blocks[i].start());
      if (d < best) {
        best = d;
        pick = i;
      }
    }
    used[pick] = true;
    order.push_back(pick);
    if (!blocks[pick].empty()) pos = blocks[pick].end();
  }
  return order;
}

StitchPlan order_blocks(std::span<const StitchBlock> blocks, const PlannerParams& params, std::string name) {
  validate_params(params);
  const double half_w = params.hoop_width_mm * kUnitsPerMm / 2;
  const double half_h = params.hoop_height_mm * kUnitsPerMm / 2;
  for (const auto& b : blocks) {
    for (const auto& run : b.runs) {
      for (const auto& p : run) {
        if (std::abs(p.x) > half_w + 1e-9 || std::abs(p.y) > half_h + 1e-9)
          throw Error(ErrorCode::HoopOverflow, "stitch at (" + std::to_string(to_mm(p.x)) + ", " +
                                                   std::to_string(to_mm(p.y)) + ") mm lies outside the hoop");
      }
    }
  }

  PlanEmitter emitter(params);
  StitchPoint pos{0, 0};
  for (int cls = 0; cls <= 4; ++cls) {
    std::vector<StitchBlock> group;
    for (const auto& b : blocks)
      if (role_class(b.role) == cls && !b.empty()) group.push_back(b);
    if (group.empty()) continue;
    std::vector<size_t> order = greedy_order(group, pos);
    std::vector<size_t> identity(group.size());
    std::iota(identity.begin(), identity.end(), size_t{0});
    if (travel_mm(group, identity, pos) < travel_mm(group, order, pos)) order = identity;
    for (size_t i : order) emitter.add(group[i]);
    pos = group[order.back()].end();
  }
  return {std::move(name), emitter.take()};
}

std::vector<StitchBlock> plan_components(const DecomposedScene& scene, const PlannerParams& params,
                                         std::vector<Warning>* warnings) {
  validate_params(params);
  using Part = std::pair<std::vector<StitchBlock>, std::vector<Warning>>;
  std::vector<std::future<Part>> jobs;
  for (const auto& area : scene.area_fills) {
    jobs.push_back(std::async(std::launch::async, [&area, &params]() -> Part {
      return {{plan_fill(area.region, params, BlockRole::AreaFill)}, {}};
    }));
  }
  for (const auto& tex : scene.texture_line_fills) {
    jobs.push_back(std::async(std::launch::async, [&tex, &params]() -> Part {
      Part part;
      const auto& prim = tex.primitives;
      if (!prim.line_families.empty()) {
        StitchBlock b = plan_line_texture(tex.owner_region, prim.line_families, params);
        if (!b.empty()) part.first.push_back(std::move(b));
      }
      const Glyph* glyph = prim.glyph ? &*prim.glyph : nullptr;
      for (const auto& stamp : prim.stamps) {
        StitchBlock b = plan_stamp(stamp, glyph, params);
        if (!b.empty()) part.first.push_back(std::move(b));
      }
      return part;
    }));
  }
  std::vector<StitchBlock> blocks;
  for (auto& job : jobs) {
    Part part = job.get();
    for (auto& b : part.first) blocks.push_back(std::move(b));
    if (warnings) warnings->insert(warnings->end(), part.second.begin(), part.second.end());
  }
  for (const auto& outline : scene.outlines) {
    StitchBlock b = plan_running(outline.path, params, BlockRole::Outline, warnings);
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  for (auto& b : plan_text(scene.text_elements, params, StrokeFont::simplex(), warnings)) blocks.push_back(std::move(b));
  return blocks;
}

DecomposedScene centered(const DecomposedScene& scene) {
  const Rect& r = scene.bounds_mm;
  return translated(scene, Vec2{-(r.x0 + r.x1) / 2, -(r.y0 + r.y1) / 2});
}

StitchPlan assemble_plan(const DecomposedScene& scene, const PlannerParams& params, std::string name,
                         std::vector<Warning>* warnings) {
  const std::vector<StitchBlock> blocks = plan_components(centered(scene), params, warnings);
  return order_blocks(blocks, params, std::move(name));
}

}  // namespace texstitch
