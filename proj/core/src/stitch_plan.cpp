#include "texstitch/stitch_plan.h"

#include <algorithm>
#include <cstdlib>

#include "texstitch/error.h"

namespace texstitch {

namespace {

constexpr StitchPoint kTrimSignature[kTrimRecordCount] = {{2, -2}, {-4, 4}, {2, -2}};

bool is_move(StitchKind k) { return k != StitchKind::Normal; }

}  // namespace

std::string_view to_string(StitchKind kind) {
  switch (kind) {
    case StitchKind::Normal: return "n";
    case StitchKind::Jump: return "j";
    case StitchKind::Trim: return "t";
    case StitchKind::ColorChange: return "c";
  }
  return "?";
}

std::string_view to_string(BlockRole role) {
  switch (role) {
    case BlockRole::Unknown: return "unknown";
    case BlockRole::AreaFill: return "area_fill";
    case BlockRole::TextureFill: return "texture_fill";
    case BlockRole::Outline: return "outline";
    case BlockRole::Text: return "text";
  }
  return "unknown";
}

BlockRole block_role_from_string(std::string_view s) {
  if (s == "area_fill") return BlockRole::AreaFill;
  if (s == "texture_fill") return BlockRole::TextureFill;
  if (s == "outline") return BlockRole::Outline;
  if (s == "text") return BlockRole::Text;
  if (s == "unknown") return BlockRole::Unknown;
  throw Error(ErrorCode::SyntaxError, "unknown block role '" + std::string(s) + "'");
}

std::vector<Stitch> flatten(const StitchPlan& plan) {
  std::vector<Stitch> out;
  for (const auto& b : plan.blocks) out.insert(out.end(), b.stitches.begin(), b.stitches.end());
  return out;
}

PlanStats compute_stats(const StitchPlan& plan) {
  PlanStats st;
  st.block_count = plan.blocks.size();
  StitchPoint pos{0, 0};
  for (const auto& b : plan.blocks) {
    for (const auto& s : b.stitches) {
      switch (s.kind) {
        case StitchKind::Normal:
          ++st.normal_count;
          ++st.stitch_count;
          st.total_thread_length_mm += distance_units(pos, s.point()) / kUnitsPerMm;
          break;
        case StitchKind::Jump:
          ++st.jump_count;
          ++st.stitch_count;
          break;
        case StitchKind::Trim:
          ++st.trim_count;
          st.stitch_count += kTrimRecordCount;
          break;
        case StitchKind::ColorChange:
          ++st.color_change_count;
          ++st.stitch_count;
          break;
      }
      st.bounds.x0 = std::min(st.bounds.x0, s.x);
      st.bounds.y0 = std::min(st.bounds.y0, s.y);
      st.bounds.x1 = std::max(st.bounds.x1, s.x);
      st.bounds.y1 = std::max(st.bounds.y1, s.y);
      pos = s.point();
    }
  }
  return st;
}

void validate_plan(const StitchPlan& plan) {
  StitchPoint pos{0, 0};
  bool first_record = true;
  std::vector<StitchPoint> jump_run;
  for (size_t bi = 0; bi < plan.blocks.size(); ++bi) {
    const auto& b = plan.blocks[bi];
    const std::string where = "block " + std::to_string(bi);
    if (b.stitches.empty()) throw Error(ErrorCode::InvalidPlan, where + " is empty");
    if (is_move(b.stitches.back().kind))
      throw Error(ErrorCode::InvalidPlan, where + " does not end with a normal stitch");
    if (bi > 0 && !is_move(b.stitches.front().kind))
      throw Error(ErrorCode::InvalidPlan, where + " does not start with a move");
    bool seen_normal = false;
    for (const auto& s : b.stitches) {
      const StitchPoint p = s.point();
      const int dx = p.x - pos.x;
      const int dy = p.y - pos.y;
      if (s.kind == StitchKind::Normal) {
        seen_normal = true;
      } else if (seen_normal) {
        throw Error(ErrorCode::InvalidPlan, where + " has a move after its normal stitches");
      }
      if (s.kind == StitchKind::Trim || s.kind == StitchKind::ColorChange) {
        if (dx != 0 || dy != 0) throw Error(ErrorCode::InvalidPlan, where + ": trims and colour changes cannot move");
        if (s.kind == StitchKind::Trim && first_record)
          throw Error(ErrorCode::InvalidPlan, "a trim cannot be the first record");
      } else if (std::abs(dx) > kMaxRecordDelta || std::abs(dy) > kMaxRecordDelta) {
        throw Error(ErrorCode::InvalidPlan, where + ": move exceeds 121 units");
      }
      if (s.kind == StitchKind::Jump) {
        jump_run.push_back({dx, dy});
        if (jump_run.size() >= kTrimRecordCount &&
            std::equal(jump_run.end() - kTrimRecordCount, jump_run.end(), std::begin(kTrimSignature)))
          throw Error(ErrorCode::InvalidPlan, where + ": jumps collide with the trim signature");
      } else {
        jump_run.clear();
      }
      pos = p;
      first_record = false;
    }
  }
}

StitchPlan dst_projection(const StitchPlan& plan) {
  StitchPlan out = plan;
  if (out.name.size() > kMaxPlanNameLength) out.name.resize(kMaxPlanNameLength);
  for (char& c : out.name)
    if (static_cast<unsigned char>(c) < 0x20) c = ' ';
  while (!out.name.empty() && out.name.back() == ' ') out.name.pop_back();
  for (auto& b : out.blocks) b.role = BlockRole::Unknown;
  return out;
}

double block_thread_length_mm(const PlanBlock& block, StitchPoint previous) {
  double len = 0.0;
  for (const auto& s : block.stitches) {
    if (s.kind == StitchKind::Normal) len += distance_units(previous, s.point()) / kUnitsPerMm;
    previous = s.point();
  }
  return len;
}

}  // namespace texstitch
