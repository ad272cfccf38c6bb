#pragma once

#include <string>
#include <vector>

#include "texstitch/stitch_plan.h"

namespace texstitch {

struct SvgOptions {
  bool show_jumps = true;
  bool show_points = false;
  double stroke_mm = 0.3;
};

/// SVG preview. The canvas is the plan's bounding box in mm; one
/// `class="block"` path per block with normal stitches, dashed
/// `class="jump"` paths for jump moves and a scissors mark at every trim.
std::string render_svg(const StitchPlan& plan, const SvgOptions& options = {});

struct DensityOptions {
  double jump_penalty = 1.0;  // per jump record endpoint
  double trim_penalty = 3.0;  // per trim
};

/// Thread length per grid cell over the plan's bounding box, plus a
/// separate layer of trim and jump penalties.
struct DensityGrid {
  double x0_mm = 0.0;
  double y0_mm = 0.0;
  double cell_mm = 1.0;
  int cols = 1;
  int rows = 1;
  std::vector<double> thread_mm;  // row-major, row 0 at y0
  std::vector<double> penalty;

  double thread_at(int col, int row) const { return thread_mm[static_cast<size_t>(row * cols + col)]; }
  double penalty_at(int col, int row) const { return penalty[static_cast<size_t>(row * cols + col)]; }
  double total_thread_mm() const;
  double total_penalty() const;
};

/// Throws RangeError unless `cell_mm` is positive.
DensityGrid render_density(const StitchPlan& plan, double cell_mm, const DensityOptions& options = {});

/// Grayscale heat map of the thread layer; darker cells carry more thread.
std::string density_svg(const DensityGrid& grid);

}  // namespace texstitch
