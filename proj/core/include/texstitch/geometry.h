#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace texstitch {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }

/// Unit vector at `angle_deg` measured counter-clockwise from +x.
Vec2 direction_from_angle(double angle_deg);

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Vec2 p, double eps = 1e-9) const {
    return p.x >= x0 - eps && p.x <= x1 + eps && p.y >= y0 - eps && p.y <= y1 + eps;
  }
  bool contains(const Rect& r, double eps = 1e-9) const {
    return contains(Vec2{r.x0, r.y0}, eps) && contains(Vec2{r.x1, r.y1}, eps);
  }
  bool operator==(const Rect&) const = default;
};

/// Closed polygon; the closing edge back to the first vertex is implicit.
using Polygon = std::vector<Vec2>;
using Polyline = std::vector<Vec2>;

Polygon rect_polygon(const Rect& r);
Polygon regular_polygon(Vec2 center, double radius, int sides);
Polygon translated(const Polygon& poly, Vec2 offset);

double signed_area(std::span<const Vec2> poly);
double polyline_length(std::span<const Vec2> line);
Rect bounding_box(std::span<const Vec2> points);
Rect united(const Rect& a, const Rect& b);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);
double point_polyline_distance(Vec2 p, std::span<const Vec2> line);
double point_polygon_boundary_distance(Vec2 p, std::span<const Vec2> poly);

/// Even-odd containment; points exactly on the boundary may go either way.
bool point_in_polygon(Vec2 p, std::span<const Vec2> poly);
/// Inside, or within `eps` of the boundary.
bool point_in_polygon_or_near(Vec2 p, std::span<const Vec2> poly, double eps);

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);
/// True when the segment lies in the polygon without crossing its boundary.
bool segment_inside_polygon(Vec2 a, Vec2 b, std::span<const Vec2> poly);

/// Location on a polygon boundary: edge `edge` runs from vertex `edge` to
/// vertex `edge + 1` (mod n), `t` in [0, 1] along it.
struct BoundaryPoint {
  int edge = 0;
  double t = 0.0;
};

Vec2 boundary_position(std::span<const Vec2> poly, BoundaryPoint bp);

/// Walk along the boundary from `a` to `b`. `forward` follows vertex order.
Polyline boundary_walk(std::span<const Vec2> poly, BoundaryPoint a, BoundaryPoint b, bool forward);
/// The shorter of the two boundary walks.
Polyline shortest_boundary_walk(std::span<const Vec2> poly, BoundaryPoint a, BoundaryPoint b);

/// One clipped piece of a scan line: the chord of the polygon between
/// parameters `t0 < t1` along the scan direction, at normal offset `s`.
struct Span {
  double s = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  BoundaryPoint start;
  BoundaryPoint end;
};

/// Parallel scan lines over a polygon. Lines run along `angle_deg`; the
/// first sits `spacing / 2` past the polygon's minimum extent along the line
/// normal and subsequent lines follow every `spacing`. Spans in each row
/// are sorted along the scan direction.
struct ScanRows {
  Vec2 dir;
  Vec2 normal;
  std::vector<std::vector<Span>> rows;

  Vec2 point(double s, double t) const { return dir * t + normal * s; }
  Vec2 start_of(const Span& sp) const { return point(sp.s, sp.t0); }
  Vec2 end_of(const Span& sp) const { return point(sp.s, sp.t1); }
};

ScanRows scan_rows(std::span<const Vec2> poly, double angle_deg, double spacing);

/// Spans of the polygon along a single line at normal offset `s`.
std::vector<Span> clip_line(std::span<const Vec2> poly, Vec2 dir, Vec2 normal, double s);

}  // namespace texstitch
