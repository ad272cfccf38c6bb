#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace texstitch {

/// Stitch coordinates are integers in 0.1 mm, y up, origin at the hoop centre.
inline constexpr double kUnitsPerMm = 10.0;
/// Largest per-axis move one DST record can carry.
inline constexpr int kMaxRecordDelta = 121;
/// A trim is written as this many jump records that return to the start.
inline constexpr int kTrimRecordCount = 3;
/// Label field width of the DST header.
inline constexpr size_t kMaxPlanNameLength = 16;

inline int32_t to_units(double mm) { return static_cast<int32_t>(std::lround(mm * kUnitsPerMm)); }
inline double to_mm(int32_t units) { return units / kUnitsPerMm; }

enum class StitchKind : uint8_t { Normal, Jump, Trim, ColorChange };

std::string_view to_string(StitchKind kind);

struct StitchPoint {
  int32_t x = 0;
  int32_t y = 0;

  bool operator==(const StitchPoint&) const = default;
};

inline double distance_units(StitchPoint a, StitchPoint b) {
  return std::hypot(static_cast<double>(a.x) - b.x, static_cast<double>(a.y) - b.y);
}

/// Absolute needle position after the record. Trims and colour changes
/// repeat the current position.
struct Stitch {
  int32_t x = 0;
  int32_t y = 0;
  StitchKind kind = StitchKind::Normal;

  StitchPoint point() const { return {x, y}; }
  bool operator==(const Stitch&) const = default;
};

/// Which stitching strategy produced a block. Formats without block
/// annotations (DST) decode to Unknown.
enum class BlockRole : uint8_t { Unknown, AreaFill, TextureFill, Outline, Text };

std::string_view to_string(BlockRole role);
BlockRole block_role_from_string(std::string_view s);

/// A run of normal stitches preceded by the moves (trim, jumps) that reach it.
struct PlanBlock {
  BlockRole role = BlockRole::Unknown;
  std::vector<Stitch> stitches;

  bool operator==(const PlanBlock&) const = default;
};

/// Ordered stitch program. The terminating end record is implicit: every
/// encoder writes exactly one after the last block.
struct StitchPlan {
  std::string name;
  std::vector<PlanBlock> blocks;

  bool operator==(const StitchPlan&) const = default;
};

struct IntRect {
  int32_t x0 = 0;
  int32_t y0 = 0;
  int32_t x1 = 0;
  int32_t y1 = 0;

  bool operator==(const IntRect&) const = default;
};

struct PlanStats {
  /// Box over every needle position including the starting origin.
  IntRect bounds;
  /// Encoded records, end record excluded; a trim counts as its jump records.
  size_t stitch_count = 0;
  size_t normal_count = 0;
  size_t jump_count = 0;
  size_t trim_count = 0;
  size_t color_change_count = 0;
  size_t block_count = 0;
  double total_thread_length_mm = 0.0;
};

PlanStats compute_stats(const StitchPlan& plan);

inline double estimated_minutes(const PlanStats& stats, double machine_speed_spm) {
  return machine_speed_spm > 0.0 ? static_cast<double>(stats.stitch_count) / machine_speed_spm : 0.0;
}

/// All records in order, end record excluded.
std::vector<Stitch> flatten(const StitchPlan& plan);

/// Check the canonical block structure and DST feasibility:
///  - each block is one or more moves (jump, trim, colour change) followed
///    by at least one normal stitch; only the first block may skip the moves;
///  - normal and jump records move at most 121 units per axis;
///  - trims and colour changes do not move, and a trim is never first;
///  - no three consecutive jumps spell the trim signature.
/// Throws InvalidPlan.
void validate_plan(const StitchPlan& plan);

/// What survives a DST round trip: block roles dropped, the name cut to the
/// label field with control characters blanked and trailing spaces removed.
StitchPlan dst_projection(const StitchPlan& plan);

/// Thread length of normal stitches inside `block`, in mm. The first
/// normal stitch is measured from `previous`.
double block_thread_length_mm(const PlanBlock& block, StitchPoint previous);

}  // namespace texstitch
