#include "texstitch/preview_render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "texstitch/error.h"

namespace texstitch {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string pt(int32_t x, int32_t y) { return std::to_string(x) + " " + std::to_string(-y); }

}  // namespace

std::string render_svg(const StitchPlan& plan, const SvgOptions& options) {
  const IntRect b = compute_stats(plan).bounds;
  const int w = b.x1 - b.x0;
  const int h = b.y1 - b.y0;
  const double stroke = options.stroke_mm * kUnitsPerMm;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w / kUnitsPerMm) << "mm\" height=\""
     << fmt(h / kUnitsPerMm) << "mm\" viewBox=\"" << b.x0 << " " << -b.y1 << " " << w << " " << h << "\">\n";
  if (!plan.name.empty()) {
    std::string title;
    for (char c : plan.name) {
      switch (c) {
        case '&': title += "&amp;"; break;
        case '<': title += "&lt;"; break;
        case '>': title += "&gt;"; break;
        default: title += c;
      }
    }
    os << "<title>" << title << "</title>\n";
  }
  os << "<g fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
  int32_t x = 0;
  int32_t y = 0;
  std::ostringstream marks;
  for (const auto& block : plan.blocks) {
    std::string stitch_d;
    std::string jump_d;
    bool drawing = false;
    for (const auto& s : block.stitches) {
      switch (s.kind) {
        case StitchKind::Normal:
          stitch_d += (drawing ? " L " : (stitch_d.empty() ? "M " : " M ")) + pt(s.x, s.y);
          drawing = true;
          if (options.show_points)
            marks << "<circle class=\"point\" cx=\"" << s.x << "\" cy=\"" << -s.y << "\" r=\"" << fmt(stroke * 0.6)
                  << "\" fill=\"#c00\"/>\n";
          break;
        case StitchKind::Jump:
          jump_d += (jump_d.empty() ? "M " : " M ") + pt(x, y) + " L " + pt(s.x, s.y);
          drawing = false;
          break;
        case StitchKind::Trim:
          marks << "<text class=\"trim\" x=\"" << s.x << "\" y=\"" << -s.y << "\" font-size=\"" << fmt(stroke * 8)
                << "\" fill=\"#06c\">&#x2702;</text>\n";
          drawing = false;
          break;
        case StitchKind::ColorChange:
          drawing = false;
          break;
      }
      x = s.x;
      y = s.y;
    }
    if (options.show_jumps && !jump_d.empty())
      os << "<path class=\"jump\" stroke=\"#999\" stroke-width=\"" << fmt(stroke / 2)
         << "\" stroke-dasharray=\"" << fmt(stroke * 2) << "\" d=\"" << jump_d << "\"/>\n";
    if (!stitch_d.empty())
      os << "<path class=\"block\" data-role=\"" << to_string(block.role) << "\" stroke=\"#222\" stroke-width=\""
         << fmt(stroke) << "\" d=\"" << stitch_d << "\"/>\n";
  }
  os << "</g>\n" << marks.str() << "</svg>\n";
  return os.str();
}

double DensityGrid::total_thread_mm() const { return std::accumulate(thread_mm.begin(), thread_mm.end(), 0.0); }

double DensityGrid::total_penalty() const { return std::accumulate(penalty.begin(), penalty.end(), 0.0); }

DensityGrid render_density(const StitchPlan& plan, double cell_mm, const DensityOptions& options) {
  if (!(cell_mm > 0.0)) throw Error(ErrorCode::RangeError, "density cell size must be positive");
  const IntRect b = compute_stats(plan).bounds;
  DensityGrid g;
  g.cell_mm = cell_mm;
  g.x0_mm = to_mm(b.x0);
  g.y0_mm = to_mm(b.y0);
  g.cols = std::max(1, static_cast<int>(std::ceil(to_mm(b.x1 - b.x0) / cell_mm - 1e-9)));
  g.rows = std::max(1, static_cast<int>(std::ceil(to_mm(b.y1 - b.y0) / cell_mm - 1e-9)));
  g.thread_mm.assign(static_cast<size_t>(g.cols) * static_cast<size_t>(g.rows), 0.0);
  g.penalty.assign(g.thread_mm.size(), 0.0);

  auto cell_of = [&g](double x, double y) {
    const int c = std::clamp(static_cast<int>(std::floor((x - g.x0_mm) / g.cell_mm)), 0, g.cols - 1);
    const int r = std::clamp(static_cast<int>(std::floor((y - g.y0_mm) / g.cell_mm)), 0, g.rows - 1);
    return static_cast<size_t>(r * g.cols + c);
  };

  double px = 0.0;
  double py = 0.0;
  std::vector<double> cuts;
  for (const auto& block : plan.blocks) {
    for (const auto& s : block.stitches) {
      const double x = to_mm(s.x);
      const double y = to_mm(s.y);
      if (s.kind == StitchKind::Normal) {
        const double len = std::hypot(x - px, y - py);
        if (len > 0.0) {
          cuts.assign({0.0, 1.0});
          auto add_cuts = [&cuts](double a, double d, double origin, double cell) {
            if (d == 0.0) return;
            const double lo = std::min(a, a + d);
            const double hi = std::max(a, a + d);
            for (double k = std::ceil((lo - origin) / cell); origin + k * cell < hi; k += 1.0) {
              const double t = (origin + k * cell - a) / d;
              if (t > 0.0 && t < 1.0) cuts.push_back(t);
            }
          };
          add_cuts(px, x - px, g.x0_mm, cell_mm);
          add_cuts(py, y - py, g.y0_mm, cell_mm);
          std::sort(cuts.begin(), cuts.end());
          for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double tm = (cuts[i] + cuts[i + 1]) / 2;
            g.thread_mm[cell_of(px + (x - px) * tm, py + (y - py) * tm)] += len * (cuts[i + 1] - cuts[i]);
          }
        }
      } else if (s.kind == StitchKind::Jump) {
        g.penalty[cell_of(x, y)] += options.jump_penalty;
      } else if (s.kind == StitchKind::Trim) {
        g.penalty[cell_of(x, y)] += options.trim_penalty;
      }
      px = x;
      py = y;
    }
  }
  return g;
}

std::string density_svg(const DensityGrid& g) {
  const double peak = g.thread_mm.empty() ? 0.0 : *std::max_element(g.thread_mm.begin(), g.thread_mm.end());
  const double w = g.cols * g.cell_mm;
  const double h = g.rows * g.cell_mm;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "mm\" height=\"" << fmt(h)
     << "mm\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      const double v = g.thread_at(c, r);
      if (v <= 0.0) continue;
      const int level = 255 - static_cast<int>(std::lround(255.0 * v / peak));
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", level, level, level);
      os << "<rect x=\"" << fmt(c * g.cell_mm) << "\" y=\"" << fmt(h - (r + 1) * g.cell_mm) << "\" width=\""
         << fmt(g.cell_mm) << "\" height=\"" << fmt(g.cell_mm) << "\" fill=\"" << color << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace texstitch
