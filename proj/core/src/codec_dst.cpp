#include "texstitch/codec_dst.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>

#include "texstitch/error.h"

namespace texstitch {

namespace {

constexpr uint8_t kEndFlags = 0xF3;
constexpr uint8_t kColorChangeFlags = 0xC3;
constexpr uint8_t kMandatoryBits = 0x03;
constexpr uint8_t kJumpBit = 0x80;
constexpr uint8_t kColorBit = 0x40;
constexpr int kTrimDeltas[kTrimRecordCount][2] = {{2, -2}, {-4, 4}, {2, -2}};

struct AxisBits {
  // {byte, plus bit, minus bit} for weights 1, 3, 9, 27, 81
  int byte[5];
  int plus[5];
  int minus[5];
};

constexpr AxisBits kX{{0, 1, 0, 1, 2}, {0, 0, 2, 2, 2}, {1, 1, 3, 3, 3}};
constexpr AxisBits kY{{0, 1, 0, 1, 2}, {7, 7, 5, 5, 5}, {6, 6, 4, 4, 4}};

void put_axis(int v, const AxisBits& axis, std::array<uint8_t, 3>& rec) {
  for (int w = 0; w < 5; ++w) {
    const int r = ((v % 3) + 3) % 3;
    if (r == 1) {
      rec[static_cast<size_t>(axis.byte[w])] |= static_cast<uint8_t>(1u << axis.plus[w]);
      v = (v - 1) / 3;
    } else if (r == 2) {
      rec[static_cast<size_t>(axis.byte[w])] |= static_cast<uint8_t>(1u << axis.minus[w]);
      v = (v + 1) / 3;
    } else {
      v /= 3;
    }
  }
}

int get_axis(const uint8_t* rec, const AxisBits& axis) {
  static constexpr int kWeights[5] = {1, 3, 9, 27, 81};
  int v = 0;
  for (int w = 0; w < 5; ++w) {
    const uint8_t b = rec[axis.byte[w]];
    if (b & (1u << axis.plus[w])) v += kWeights[w];
    if (b & (1u << axis.minus[w])) v -= kWeights[w];
  }
  return v;
}

// DST labels are a fixed-width text field.
std::string header_label(const std::string& name) {
  std::string s = name.substr(0, kMaxPlanNameLength);
  for (char& c : s)
    if (static_cast<unsigned char>(c) < 0x20) c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void append_line(std::vector<uint8_t>& out, const char* fmt, auto... args) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, fmt, args...);
  out.insert(out.end(), buf, buf + std::min<int>(n, sizeof buf - 1));
}

void append_signed(std::vector<uint8_t>& out, const char* key, int v) {
  append_line(out, "%s:%c%5d\r", key, v >= 0 ? '+' : '-', std::abs(v));
}

std::string trim(std::string_view s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
  return std::string(s.substr(a, b - a));
}

int parse_int(const std::string& field, const std::string& value) {
  std::string v;
  for (char c : value)
    if (c != ' ' && c != '+') v += c;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorCode::BadHeader, "field " + field + " is not a number: '" + value + "'");
  return out;
}

}  // namespace

DstHeader make_dst_header(const StitchPlan& plan) {
  const PlanStats st = compute_stats(plan);
  DstHeader h;
  h.label = header_label(plan.name);
  h.stitch_count = static_cast<int>(st.stitch_count);
  h.color_count = static_cast<int>(st.color_change_count);
  h.plus_x = std::abs(st.bounds.x1);
  h.minus_x = std::abs(st.bounds.x0);
  h.plus_y = std::abs(st.bounds.y1);
  h.minus_y = std::abs(st.bounds.y0);
  for (auto it = plan.blocks.rbegin(); it != plan.blocks.rend(); ++it) {
    if (it->stitches.empty()) continue;
    h.ax = it->stitches.back().x;
    h.ay = it->stitches.back().y;
    break;
  }
  return h;
}

std::vector<uint8_t> encode_dst_header(const DstHeader& h) {
  std::vector<uint8_t> out;
  out.reserve(kDstHeaderSize);
  append_line(out, "LA:%-16s\r", header_label(h.label).c_str());
  append_line(out, "ST:%7d\r", h.stitch_count);
  append_line(out, "CO:%3d\r", h.color_count);
  append_line(out, "+X:%5d\r", h.plus_x);
  append_line(out, "-X:%5d\r", h.minus_x);
  append_line(out, "+Y:%5d\r", h.plus_y);
  append_line(out, "-Y:%5d\r", h.minus_y);
  append_signed(out, "AX", h.ax);
  append_signed(out, "AY", h.ay);
  append_signed(out, "MX", h.mx);
  append_signed(out, "MY", h.my);
  append_line(out, "PD:%6s\r", h.pd.substr(0, 6).c_str());
  out.push_back(0x1A);
  if (out.size() > kDstHeaderSize) throw Error(ErrorCode::BadHeader, "header fields exceed 512 bytes");
  out.resize(kDstHeaderSize, 0x20);
  return out;
}

std::array<uint8_t, 3> encode_dst_record(int dx, int dy, bool jump) {
  if (std::abs(dx) > kMaxRecordDelta || std::abs(dy) > kMaxRecordDelta)
    throw Error(ErrorCode::DeltaOverflow,
                "move (" + std::to_string(dx) + ", " + std::to_string(dy) + ") exceeds 121 units");
  std::array<uint8_t, 3> rec{0, 0, kMandatoryBits};
  if (jump) rec[2] |= kJumpBit;
  put_axis(dx, kX, rec);
  put_axis(dy, kY, rec);
  return rec;
}

std::vector<uint8_t> encode_dst(const StitchPlan& plan) {
  std::vector<uint8_t> out = encode_dst_header(make_dst_header(plan));
  auto put = [&out](const std::array<uint8_t, 3>& r) { out.insert(out.end(), r.begin(), r.end()); };
  int x = 0;
  int y = 0;
  for (const auto& block : plan.blocks) {
    for (const auto& s : block.stitches) {
      switch (s.kind) {
        case StitchKind::Normal: put(encode_dst_record(s.x - x, s.y - y)); break;
        case StitchKind::Jump: put(encode_dst_record(s.x - x, s.y - y, true)); break;
        case StitchKind::Trim:
          if (s.x != x || s.y != y) throw Error(ErrorCode::DeltaOverflow, "trim records cannot move");
          for (const auto& d : kTrimDeltas) put(encode_dst_record(d[0], d[1], true));
          break;
        case StitchKind::ColorChange:
          if (s.x != x || s.y != y) throw Error(ErrorCode::DeltaOverflow, "colour changes cannot move");
          put({0, 0, kColorChangeFlags});
          break;
      }
      x = s.x;
      y = s.y;
    }
  }
  put({0, 0, kEndFlags});
  return out;
}

DstHeader decode_dst_header(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kDstHeaderSize)
    throw Error(ErrorCode::BadHeader, "file has " + std::to_string(bytes.size()) + " bytes, header needs 512");
  if (bytes[0] != 'L' || bytes[1] != 'A' || bytes[2] != ':') throw Error(ErrorCode::BadHeader, "missing LA: label");
  DstHeader h;
  size_t start = 0;
  for (size_t i = 0; i <= kDstHeaderSize; ++i) {
    const bool stop = i == kDstHeaderSize || bytes[i] == 0x1A;
    if (!stop && bytes[i] != '\r' && bytes[i] != '\n') continue;
    const std::string line(bytes.begin() + static_cast<std::ptrdiff_t>(start), bytes.begin() + static_cast<std::ptrdiff_t>(i));
    start = i + 1;
    if (line.size() >= 3 && line[2] == ':') {
      const std::string key = line.substr(0, 2);
      const std::string value = line.substr(3);
      if (key == "LA") h.label = header_label(value);
      else if (key == "ST") h.stitch_count = parse_int(key, value);
      else if (key == "CO") h.color_count = parse_int(key, value);
      else if (key == "+X") h.plus_x = parse_int(key, value);
      else if (key == "-X") h.minus_x = parse_int(key, value);
      else if (key == "+Y") h.plus_y = parse_int(key, value);
      else if (key == "-Y") h.minus_y = parse_int(key, value);
      else if (key == "AX") h.ax = parse_int(key, value);
      else if (key == "AY") h.ay = parse_int(key, value);
      else if (key == "MX") h.mx = parse_int(key, value);
      else if (key == "MY") h.my = parse_int(key, value);
      else if (key == "PD") h.pd = trim(value);
    }
    if (stop) break;
  }
  return h;
}

StitchPlan decode_dst(const std::vector<uint8_t>& bytes) {
  const DstHeader header = decode_dst_header(bytes);
  std::vector<Stitch> records;
  int x = 0;
  int y = 0;
  bool ended = false;
  size_t at = kDstHeaderSize;
  for (; at < bytes.size(); at += kDstRecordSize) {
    if (bytes.size() - at < kDstRecordSize)
      throw Error(ErrorCode::TruncatedRecord, "partial record at byte " + std::to_string(at));
    const uint8_t* rec = &bytes[at];
    const uint8_t b2 = rec[2];
    if ((b2 & kMandatoryBits) != kMandatoryBits)
      throw Error(ErrorCode::UnknownRecordBits, "record at byte " + std::to_string(at) + " lacks the fixed bits");
    if ((b2 & kEndFlags) == kEndFlags) {
      ended = true;
      break;
    }
    x += get_axis(rec, kX);
    y += get_axis(rec, kY);
    StitchKind kind = StitchKind::Normal;
    if ((b2 & kColorChangeFlags) == kColorChangeFlags) {
      kind = StitchKind::ColorChange;
    } else if (b2 & kColorBit) {
      throw Error(ErrorCode::UnknownRecordBits, "sequin record at byte " + std::to_string(at));
    } else if (b2 & kJumpBit) {
      kind = StitchKind::Jump;
    }
    records.push_back({x, y, kind});
  }
  if (!ended) throw Error(ErrorCode::TruncatedRecord, "record stream has no end record");

  StitchPlan plan;
  plan.name = header.label;
  int px = 0;
  int py = 0;
  for (size_t i = 0; i < records.size(); ++i) {
    Stitch s = records[i];
    if (s.kind == StitchKind::Jump && i + kTrimRecordCount <= records.size()) {
      bool trim = true;
      int qx = px;
      int qy = py;
      for (int k = 0; k < kTrimRecordCount && trim; ++k) {
        const Stitch& r = records[i + static_cast<size_t>(k)];
        trim = r.kind == StitchKind::Jump && r.x - qx == kTrimDeltas[k][0] && r.y - qy == kTrimDeltas[k][1];
        qx = r.x;
        qy = r.y;
      }
      if (trim) {
        s = {px, py, StitchKind::Trim};
        i += kTrimRecordCount - 1;
      }
    }
    const bool starts_block = plan.blocks.empty() ||
                              (s.kind != StitchKind::Normal && plan.blocks.back().stitches.back().kind == StitchKind::Normal);
    if (starts_block) plan.blocks.push_back({BlockRole::Unknown, {}});
    plan.blocks.back().stitches.push_back(s);
    px = s.x;
    py = s.y;
  }
  return plan;
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace texstitch
