#include "texstitch/decomposer.h"

#include "texstitch/error.h"

namespace texstitch {

namespace {

Polyline rect_outline(const Rect& r) {
  if (r.width() == 0.0 || r.height() == 0.0) return {{r.x0, r.y0}, {r.x1, r.y1}};
  return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}, {r.x0, r.y0}};
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void shift(Polyline& line, Vec2 d) {
  for (auto& p : line) p += d;
}

}  // namespace

DecomposedScene decompose(const Scene& scene, const TextureLibrary& library, double outline_margin_mm) {
  if (outline_margin_mm < 0.0) throw Error(ErrorCode::RangeError, "outline margin must be >= 0");
  DecomposedScene out;
  out.bounds_mm = scene.bounds_mm;
  for (size_t i = 0; i < scene.elements.size(); ++i) {
    const SceneElement& e = scene.elements[i];
    const int source = static_cast<int>(i);

    if (const auto* text = std::get_if<TextGeometry>(&e.geometry)) {
      out.text_elements.push_back({text->text, text->origin, text->height_mm, text->rotation_deg, e.role, source});
      continue;
    }

    if (e.role == ElementRole::BarFill) {
      const auto* bar = std::get_if<Rect>(&e.geometry);
      if (bar == nullptr) throw Error(ErrorCode::RangeError, "bar fills must be rectangles");
      if (!e.texture_id) throw Error(ErrorCode::UnknownTexture, "bar fill without a texture id");
      const TextureEntry& entry = library.lookup(*e.texture_id);
      if (std::holds_alternative<SolidFill>(entry)) {
        out.area_fills.push_back({rect_polygon(*bar), source});
        continue;
      }
      TextureFill fill;
      fill.texture_id = *e.texture_id;
      fill.pattern = std::get<TexturePattern>(entry);
      fill.source = source;
      const Rect inset{bar->x0 + outline_margin_mm, bar->y0 + outline_margin_mm, bar->x1 - outline_margin_mm,
                       bar->y1 - outline_margin_mm};
      if (inset.width() > 0.0 && inset.height() > 0.0) {
        fill.owner_region = rect_polygon(inset);
        fill.primitives = fill_region(fill.owner_region, fill.pattern);
      }
      out.texture_line_fills.push_back(std::move(fill));
      continue;
    }

    Polyline path = std::visit(overloaded{
                                   [](const Rect& r) { return rect_outline(r); },
                                   [](const Polyline& p) { return p; },
                                   [](const PointStamp& s) { return Polyline{s.center}; },
                                   [](const TextGeometry&) { return Polyline{}; },
                               },
                               e.geometry);
    out.outlines.push_back({std::move(path), e.role, source});
  }
  return out;
}

DecomposedScene translated(const DecomposedScene& scene, Vec2 d) {
  DecomposedScene out = scene;
  out.bounds_mm = {scene.bounds_mm.x0 + d.x, scene.bounds_mm.y0 + d.y, scene.bounds_mm.x1 + d.x,
                   scene.bounds_mm.y1 + d.y};
  for (auto& a : out.area_fills) shift(a.region, d);
  for (auto& t : out.texture_line_fills) {
    shift(t.owner_region, d);
    for (auto& line : t.primitives.polylines) shift(line, d);
    for (auto& s : t.primitives.stamps) s.center += d;
    for (auto& fam : t.primitives.line_families) {
      // Spans are stored in (normal, along) coordinates.
      const double ds = dot(d, fam.normal);
      const double dt = dot(d, fam.dir);
      for (auto& row : fam.rows)
        for (auto& sp : row) {
          sp.s += ds;
          sp.t0 += dt;
          sp.t1 += dt;
        }
    }
  }
  for (auto& o : out.outlines) shift(o.path, d);
  for (auto& t : out.text_elements) t.position += d;
  return out;
}

}  // namespace texstitch
