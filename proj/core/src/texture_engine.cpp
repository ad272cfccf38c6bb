#include "texstitch/texture_engine.h"

#include <cmath>
#include <sstream>

#include "texstitch/error.h"

namespace texstitch {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorCode::RangeError, std::string(what) + " must be > 0");
}

void add_hatch(FillPrimitives& out, const Polygon& region, double angle_deg, double spacing) {
  ScanRows rows = scan_rows(region, angle_deg, spacing);
  for (const auto& row : rows.rows)
    for (const auto& sp : row) out.polylines.push_back({rows.start_of(sp), rows.end_of(sp)});
  out.line_families.push_back(std::move(rows));
}

/// Grid centers anchored to the bounding box of `region`.
std::vector<Vec2> grid_centers(const Polygon& region, double pitch) {
  const Rect box = bounding_box(region);
  std::vector<Vec2> centers;
  for (int j = 0;; ++j) {
    const double y = box.y0 + pitch / 2.0 + j * pitch;
    if (y >= box.y1) break;
    for (int i = 0;; ++i) {
      const double x = box.x0 + pitch / 2.0 + i * pitch;
      if (x >= box.x1) break;
      centers.push_back({x, y});
    }
  }
  return centers;
}

bool disk_inside(const Polygon& region, Vec2 c, double radius) {
  if (!point_in_polygon(c, region)) return false;
  const double d = point_polygon_boundary_distance(c, region);
  return radius > 0.0 ? d >= radius : d > 0.0;
}

bool strokes_inside(const Polygon& region, const std::vector<Polyline>& strokes) {
  for (const auto& stroke : strokes) {
    if (stroke.size() == 1 && !point_in_polygon(stroke[0], region)) return false;
    for (size_t i = 1; i < stroke.size(); ++i)
      if (!segment_inside_polygon(stroke[i - 1], stroke[i], region)) return false;
  }
  return true;
}

}  // namespace

void validate_pattern(const TexturePattern& pattern) {
  std::visit(overloaded{
                 [](const HatchPattern& p) { require_positive(p.spacing_mm, "spacing_mm"); },
                 [](const CrosshatchPattern& p) { require_positive(p.spacing_mm, "spacing_mm"); },
                 [](const DotPattern& p) {
                   require_positive(p.spacing_mm, "spacing_mm");
                   if (!(p.diameter_mm >= 0.0))
                     throw Error(ErrorCode::RangeError, "diameter_mm must be >= 0");
                 },
                 [](const IconPattern& p) {
                   require_positive(p.spacing_mm, "spacing_mm");
                   require_positive(p.scale_mm, "scale_mm");
                   if (p.glyph.strokes.empty())
                     throw Error(ErrorCode::RangeError, "icon glyph has no strokes");
                 },
             },
             pattern);
}

std::string describe(const TexturePattern& pattern) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const HatchPattern& p) {
                   os << "hatch(angle=" << p.angle_deg << ", spacing=" << p.spacing_mm << ")";
                 },
                 [&](const CrosshatchPattern& p) {
                   os << "crosshatch(angle=" << p.angle_deg << ", spacing=" << p.spacing_mm << ")";
                 },
                 [&](const DotPattern& p) {
                   os << "dots(diameter=" << p.diameter_mm << ", spacing=" << p.spacing_mm << ")";
                 },
                 [&](const IconPattern& p) {
                   os << "icon(" << p.glyph.name << ", scale=" << p.scale_mm
                      << ", spacing=" << p.spacing_mm << ")";
                 },
             },
             pattern);
  return os.str();
}

std::vector<Polyline> place_glyph(const Glyph& glyph, Vec2 center, double scale_mm) {
  std::vector<Polyline> out;
  out.reserve(glyph.strokes.size());
  for (const auto& stroke : glyph.strokes) {
    Polyline placed;
    placed.reserve(stroke.size());
    for (const auto& p : stroke) placed.push_back(center + (p - Vec2{0.5, 0.5}) * scale_mm);
    out.push_back(std::move(placed));
  }
  return out;
}

FillPrimitives fill_region(const Polygon& region, const TexturePattern& pattern) {
  if (region.size() < 3 || std::abs(signed_area(region)) <= 1e-9)
    throw Error(ErrorCode::DegenerateRegion, "fill region has no area");
  validate_pattern(pattern);

  FillPrimitives out;
  std::visit(overloaded{
                 [&](const HatchPattern& p) { add_hatch(out, region, p.angle_deg, p.spacing_mm); },
                 [&](const CrosshatchPattern& p) {
                   add_hatch(out, region, p.angle_deg, p.spacing_mm);
                   add_hatch(out, region, p.angle_deg + 90.0, p.spacing_mm);
                 },
                 [&](const DotPattern& p) {
                   for (const Vec2 c : grid_centers(region, p.spacing_mm))
                     if (disk_inside(region, c, p.diameter_mm / 2.0))
                       out.stamps.push_back({c, StampKind::Dot, p.diameter_mm});
                 },
                 [&](const IconPattern& p) {
                   out.glyph = p.glyph;
                   for (const Vec2 c : grid_centers(region, p.spacing_mm))
                     if (strokes_inside(region, place_glyph(p.glyph, c, p.scale_mm)))
                       out.stamps.push_back({c, StampKind::Icon, p.scale_mm});
                 },
             },
             pattern);
  return out;
}

}  // namespace texstitch
