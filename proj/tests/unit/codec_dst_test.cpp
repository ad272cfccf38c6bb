#include <gtest/gtest.h>

#include <array>
#include <filesystem>
#include <random>
#include <string>

#include "generators.h"
#include "texstitch/chart_model.h"
#include "texstitch/codec_dst.h"
#include "texstitch/decomposer.h"
#include "texstitch/error.h"
#include "texstitch/stitch_planner.h"

using namespace texstitch;

namespace {

using Record = std::array<uint8_t, 3>;

// Second implementation: the record layout written out bit by bit.
struct BitValue {
  int byte;
  int bit;
  int dx;
  int dy;
};
constexpr BitValue kLayout[] = {
    {0, 0, 1, 0},   {0, 1, -1, 0},  {0, 2, 9, 0},   {0, 3, -9, 0},  {0, 4, 0, -9},  {0, 5, 0, 9},
    {0, 6, 0, -1},  {0, 7, 0, 1},   {1, 0, 3, 0},   {1, 1, -3, 0},  {1, 2, 27, 0},  {1, 3, -27, 0},
    {1, 4, 0, -27}, {1, 5, 0, 27},  {1, 6, 0, -3},  {1, 7, 0, 3},   {2, 2, 81, 0},  {2, 3, -81, 0},
    {2, 4, 0, -81}, {2, 5, 0, 81},
};

std::pair<int, int> table_decode(const Record& r) {
  int dx = 0;
  int dy = 0;
  for (const auto& b : kLayout) {
    if (r[b.byte] >> b.bit & 1) {
      dx += b.dx;
      dy += b.dy;
    }
  }
  return {dx, dy};
}

const std::vector<uint8_t>& oracle_table() {
  static const std::vector<uint8_t> bytes = read_file_bytes(TEXSTITCH_TEST_DATA_DIR "/dst_delta_oracle.bin");
  return bytes;
}

constexpr size_t kTableSide = 243;

Record oracle_record(int dx, int dy, bool jump) {
  const size_t i = ((jump ? kTableSide * kTableSide : 0) + static_cast<size_t>(dy + 121) * kTableSide +
                    static_cast<size_t>(dx + 121)) * 3;
  const auto& t = oracle_table();
  return {t[i], t[i + 1], t[i + 2]};
}

std::vector<uint8_t> oracle_tail(size_t offset, size_t n) {
  const auto& t = oracle_table();
  const size_t base = 2 * kTableSide * kTableSide * 3;
  return {t.begin() + static_cast<std::ptrdiff_t>(base + offset), t.begin() + static_cast<std::ptrdiff_t>(base + offset + n)};
}

ErrorCode decode_error(const std::vector<uint8_t>& bytes) {
  try {
    decode_dst(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decoded without error";
  return ErrorCode::IoError;
}

std::string header_text(const std::vector<uint8_t>& bytes) { return {bytes.begin(), bytes.begin() + kDstHeaderSize}; }

StitchPlan two_block_plan() {
  StitchPlan p{"pair", {}};
  p.blocks.push_back({BlockRole::Unknown, {{0, 0, StitchKind::Normal}, {10, 0, StitchKind::Normal}}});
  p.blocks.push_back({BlockRole::Unknown,
                      {{10, 0, StitchKind::Trim}, {110, -50, StitchKind::Jump}, {110, -50, StitchKind::Normal},
                       {110, 60, StitchKind::Normal}}});
  return p;
}

}  // namespace

TEST(DstRecord, KnownBytes) {
  EXPECT_EQ(encode_dst_record(1, 1), (Record{0x81, 0x00, 0x03}));
  EXPECT_EQ(encode_dst_record(0, 0), (Record{0x00, 0x00, 0x03}));
  EXPECT_EQ(encode_dst_record(0, 0, true), (Record{0x00, 0x00, 0x83}));
  EXPECT_EQ(encode_dst_record(121, 121), (Record{0xA5, 0xA5, 0x27}));
  EXPECT_EQ(encode_dst_record(-121, -121), (Record{0x5A, 0x5A, 0x1B}));
}

TEST(DstRecord, Overflow) {
  for (auto [dx, dy] : {std::pair{122, 0}, {0, -122}, {500, 500}}) {
    try {
      encode_dst_record(dx, dy);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DeltaOverflow);
    }
  }
}

TEST(DstRecord, TableDecoderInvertsEveryDelta) {
  for (int dy = -121; dy <= 121; ++dy)
    for (int dx = -121; dx <= 121; ++dx)
      for (bool jump : {false, true}) {
        const Record r = encode_dst_record(dx, dy, jump);
        ASSERT_EQ(table_decode(r), std::make_pair(dx, dy));
        ASSERT_EQ(r[2] & 0x03, 0x03);
        ASSERT_EQ((r[2] & 0x80) != 0, jump);
        ASSERT_EQ(r[2] & 0x40, 0);
      }
}

TEST(DstRecord, MatchesThirdPartyTable) {
  ASSERT_EQ(oracle_table().size(), 2 * kTableSide * kTableSide * 3 + 15);
  for (int dy = -121; dy <= 121; ++dy)
    for (int dx = -121; dx <= 121; ++dx)
      for (bool jump : {false, true}) ASSERT_EQ(encode_dst_record(dx, dy, jump), oracle_record(dx, dy, jump)) << dx << "," << dy;
}

TEST(DstEncode, EndColourAndTrimRecordsMatchThirdPartyTable) {
  StitchPlan p = two_block_plan();
  p.blocks.push_back({BlockRole::Unknown,
                      {{110, 60, StitchKind::ColorChange}, {110, 60, StitchKind::Jump}, {110, 61, StitchKind::Normal}}});
  const auto bytes = encode_dst(p);
  auto at = [&](size_t record, size_t n) {
    const size_t off = kDstHeaderSize + record * 3;
    return std::vector<uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(off),
                                bytes.begin() + static_cast<std::ptrdiff_t>(off + n * 3));
  };
  EXPECT_EQ(at(2, 3), oracle_tail(6, 9));  // trim
  EXPECT_EQ(at(8, 1), oracle_tail(3, 3));  // colour change
  EXPECT_EQ(std::vector<uint8_t>(bytes.end() - 3, bytes.end()), oracle_tail(0, 3));
  EXPECT_EQ(bytes.size(), kDstHeaderSize + 3 * (compute_stats(p).stitch_count + 1));
}

TEST(DstEncode, HeaderFields) {
  const StitchPlan p = two_block_plan();
  const auto bytes = encode_dst(p);
  const std::string h = header_text(bytes);
  EXPECT_EQ(h.substr(0, 20), "LA:pair            \r");
  EXPECT_NE(h.find("ST:      8\r"), std::string::npos);
  EXPECT_NE(h.find("CO:  0\r"), std::string::npos);
  EXPECT_NE(h.find("+X:  110\r-X:    0\r+Y:   60\r-Y:   50\r"), std::string::npos);
  EXPECT_NE(h.find("AX:+  110\rAY:+   60\rMX:+    0\rMY:+    0\rPD:******\r\x1a"), std::string::npos);
  EXPECT_EQ(h.back(), ' ');
  const DstHeader parsed = decode_dst_header(bytes);
  EXPECT_EQ(parsed, make_dst_header(p));
  EXPECT_EQ(parsed.stitch_count, 8);
}

TEST(DstEncode, LongLabelsAreCut) {
  StitchPlan p = two_block_plan();
  p.name = "How much does my family like vegetables";
  const auto decoded = decode_dst(encode_dst(p));
  EXPECT_EQ(decoded.name, "How much does my");
  EXPECT_EQ(decoded, dst_projection(p));
}

TEST(DstDecode, RoundTripRandomPlans) {
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const StitchPlan p = texstitch::testing::random_plan(rng);
    const auto bytes = encode_dst(p);
    ASSERT_EQ(decode_dst(bytes), p);
    const PlanStats s = compute_stats(p);
    const DstHeader h = decode_dst_header(bytes);
    EXPECT_EQ(static_cast<size_t>(h.stitch_count), s.stitch_count);
    EXPECT_EQ(h.plus_x, s.bounds.x1);
    EXPECT_EQ(h.minus_x, -s.bounds.x0);
    EXPECT_EQ(h.plus_y, s.bounds.y1);
    EXPECT_EQ(h.minus_y, -s.bounds.y0);
  }
}

TEST(DstDecode, FamilyChartRoundTrip) {
  const TextureLibrary lib = TextureLibrary::builtin();
  const Scene scene = layout_chart(load_chart_spec(TEXSTITCH_TEST_DATA_DIR "/family.json", lib));
  const StitchPlan plan = assemble_plan(decompose(scene, lib), PlannerParams{}, "Family vegetables");
  const auto bytes = encode_dst(plan);
  EXPECT_EQ(decode_dst(bytes), dst_projection(plan));
  EXPECT_EQ(encode_dst(decode_dst(bytes)), bytes);
}

TEST(DstDecode, Errors) {
  const auto good = encode_dst(two_block_plan());
  EXPECT_EQ(decode_error(std::vector<uint8_t>(good.begin(), good.begin() + 511)), ErrorCode::BadHeader);
  std::vector<uint8_t> no_label = good;
  no_label[0] = 'X';
  EXPECT_EQ(decode_error(no_label), ErrorCode::BadHeader);
  EXPECT_EQ(decode_error(std::vector<uint8_t>(good.begin(), good.end() - 3)), ErrorCode::TruncatedRecord);
  EXPECT_EQ(decode_error(std::vector<uint8_t>(good.begin(), good.end() - 1)), ErrorCode::TruncatedRecord);
  std::vector<uint8_t> bad_bits = good;
  bad_bits[kDstHeaderSize + 2] = 0x00;
  EXPECT_EQ(decode_error(bad_bits), ErrorCode::UnknownRecordBits);
  std::vector<uint8_t> sequin = good;
  sequin[kDstHeaderSize + 2] = 0x43;
  EXPECT_EQ(decode_error(sequin), ErrorCode::UnknownRecordBits);
}

TEST(DstFiles, WriteAndReadBack) {
  const auto path = std::filesystem::temp_directory_path() / "texstitch_codec_test.dst";
  const auto bytes = encode_dst(two_block_plan());
  write_file_bytes(path.string(), bytes);
  EXPECT_EQ(read_file_bytes(path.string()), bytes);
  std::filesystem::remove(path);
  EXPECT_THROW(read_file_bytes((std::filesystem::temp_directory_path() / "texstitch_missing.dst").string()), Error);
}
