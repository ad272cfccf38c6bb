#include "texstitch/geometry.h"

#include <algorithm>
#include <limits>
#include <numbers>

namespace texstitch {

Vec2 direction_from_angle(double angle_deg) {
  const double rad = angle_deg * std::numbers::pi / 180.0;
  Vec2 d{std::cos(rad), std::sin(rad)};
  // Snap the common axis-aligned angles so scan lines stay exact.
  if (std::abs(d.x) < 1e-15) d.x = 0.0;
  if (std::abs(d.y) < 1e-15) d.y = 0.0;
  return d;
}

Polygon rect_polygon(const Rect& r) {
  return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
}

Polygon regular_polygon(Vec2 center, double radius, int sides) {
  Polygon out;
  out.reserve(static_cast<size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    out.push_back(center + Vec2{std::cos(a), std::sin(a)} * radius);
  }
  return out;
}

Polygon translated(const Polygon& poly, Vec2 offset) {
  Polygon out = poly;
  for (auto& p : out) p += offset;
  return out;
}

double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

double polyline_length(std::span<const Vec2> line) {
  double len = 0.0;
  for (size_t i = 1; i < line.size(); ++i) len += distance(line[i - 1], line[i]);
  return len;
}

Rect bounding_box(std::span<const Vec2> points) {
  if (points.empty()) return {};
  Rect r{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const auto& p : points) {
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  return r;
}

Rect united(const Rect& a, const Rect& b) {
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

double point_polyline_distance(Vec2 p, std::span<const Vec2> line) {
  if (line.empty()) return std::numeric_limits<double>::infinity();
  if (line.size() == 1) return distance(p, line[0]);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < line.size(); ++i)
    best = std::min(best, point_segment_distance(p, line[i - 1], line[i]));
  return best;
}

double point_polygon_boundary_distance(Vec2 p, std::span<const Vec2> poly) {
  double best = std::numeric_limits<double>::infinity();
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  return best;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon_or_near(Vec2 p, std::span<const Vec2> poly, double eps) {
  return point_in_polygon(p, poly) || point_polygon_boundary_distance(p, poly) <= eps;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

bool segment_inside_polygon(Vec2 a, Vec2 b, std::span<const Vec2> poly) {
  if (!point_in_polygon(a, poly) || !point_in_polygon(b, poly)) return false;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (segments_intersect(a, b, poly[i], poly[(i + 1) % n])) return false;
  return true;
}

Vec2 boundary_position(std::span<const Vec2> poly, BoundaryPoint bp) {
  const size_t n = poly.size();
  const auto e = static_cast<size_t>(bp.edge);
  return lerp(poly[e], poly[(e + 1) % n], bp.t);
}

Polyline boundary_walk(std::span<const Vec2> poly, BoundaryPoint a, BoundaryPoint b, bool forward) {
  const int n = static_cast<int>(poly.size());
  Polyline out{boundary_position(poly, a)};
  const Vec2 target = boundary_position(poly, b);
  if (forward) {
    if (a.edge == b.edge && b.t >= a.t) {
      out.push_back(target);
      return out;
    }
    int e = a.edge;
    for (int guard = 0; guard <= n; ++guard) {
      e = (e + 1) % n;
      out.push_back(poly[static_cast<size_t>(e)]);
      if (e == b.edge) break;
    }
  } else {
    if (a.edge == b.edge && b.t <= a.t) {
      out.push_back(target);
      return out;
    }
    int e = a.edge;
    for (int guard = 0; guard <= n; ++guard) {
      out.push_back(poly[static_cast<size_t>(e)]);
      e = (e - 1 + n) % n;
      if (e == b.edge) break;
    }
  }
  out.push_back(target);
  return out;
}

Polyline shortest_boundary_walk(std::span<const Vec2> poly, BoundaryPoint a, BoundaryPoint b) {
  Polyline fwd = boundary_walk(poly, a, b, true);
  Polyline bwd = boundary_walk(poly, a, b, false);
  return polyline_length(fwd) <= polyline_length(bwd) ? fwd : bwd;
}

std::vector<Span> clip_line(std::span<const Vec2> poly, Vec2 dir, Vec2 normal, double s) {
  struct Hit {
    double t;
    BoundaryPoint where;
  };
  std::vector<Hit> hits;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const double va = dot(a, normal);
    const double vb = dot(b, normal);
    if (va == vb) continue;
    // Half-open rule so a line through a vertex is counted once.
    const double lo = std::min(va, vb);
    const double hi = std::max(va, vb);
    if (s < lo || s >= hi) continue;
    const double f = (s - va) / (vb - va);
    const double t = dot(a, dir) + f * (dot(b, dir) - dot(a, dir));
    hits.push_back({t, {static_cast<int>(i), f}});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& l, const Hit& r) { return l.t < r.t; });
  std::vector<Span> spans;
  for (size_t k = 0; k + 1 < hits.size(); k += 2) {
    if (hits[k + 1].t - hits[k].t <= 1e-9) continue;
    spans.push_back({s, hits[k].t, hits[k + 1].t, hits[k].where, hits[k + 1].where});
  }
  return spans;
}

ScanRows scan_rows(std::span<const Vec2> poly, double angle_deg, double spacing) {
  ScanRows out;
  out.dir = direction_from_angle(angle_deg);
  out.normal = Vec2{-out.dir.y, out.dir.x};
  if (poly.size() < 3 || spacing <= 0.0) return out;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (const auto& p : poly) {
    const double v = dot(p, out.normal);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  for (int k = 0;; ++k) {
    const double s = vmin + spacing / 2.0 + k * spacing;
    if (s >= vmax - 1e-12) break;
    // Empty rows are kept so row indices stay contiguous in the normal direction.
    out.rows.push_back(clip_line(poly, out.dir, out.normal, s));
  }
  return out;
}

}  // namespace texstitch
