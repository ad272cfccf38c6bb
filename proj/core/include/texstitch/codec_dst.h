#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "texstitch/stitch_plan.h"

namespace texstitch {

inline constexpr size_t kDstHeaderSize = 512;
inline constexpr size_t kDstRecordSize = 3;

struct DstHeader {
  std::string label;
  int stitch_count = 0;
  int color_count = 0;
  int plus_x = 0;
  int minus_x = 0;
  int plus_y = 0;
  int minus_y = 0;
  int ax = 0;
  int ay = 0;
  int mx = 0;
  int my = 0;
  std::string pd = "******";

  bool operator==(const DstHeader&) const = default;
};

/// Header describing `plan`: extents from the computed bounds, AX/AY the
/// final needle position.
DstHeader make_dst_header(const StitchPlan& plan);

/// The 512-byte header block.
std::vector<uint8_t> encode_dst_header(const DstHeader& header);

/// One 3-byte record for a move of (dx, dy) in plan units (y up). Jumps set
/// bit 7 of the third byte. Throws DeltaOverflow beyond +-121.
std::array<uint8_t, 3> encode_dst_record(int dx, int dy, bool jump = false);

/// Header plus one record per stitch (three jumps per trim) and the end
/// record. Throws DeltaOverflow.
std::vector<uint8_t> encode_dst(const StitchPlan& plan);

/// Parse the header fields. Throws BadHeader.
DstHeader decode_dst_header(const std::vector<uint8_t>& bytes);

/// Inverse of encode_dst on feasible plans. Block roles decode as Unknown.
/// Throws BadHeader, TruncatedRecord or UnknownRecordBits.
StitchPlan decode_dst(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace texstitch
