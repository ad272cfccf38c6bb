#include "texstitch/native_plan.h"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "texstitch/error.h"

namespace texstitch {

namespace {

using nlohmann::json;

double rounded_length(double mm) { return std::round(mm * 1000.0) / 1000.0; }

StitchKind kind_from_string(const std::string& s) {
  if (s == "n") return StitchKind::Normal;
  if (s == "j") return StitchKind::Jump;
  if (s == "t") return StitchKind::Trim;
  if (s == "c") return StitchKind::ColorChange;
  throw Error(ErrorCode::SyntaxError, "unknown stitch kind '" + s + "'");
}

int32_t coordinate(const json& v) {
  if (!v.is_number_integer()) throw Error(ErrorCode::SyntaxError, "stitch coordinates must be integers");
  return v.get<int32_t>();
}

}  // namespace

std::string write_native_plan(const StitchPlan& plan) {
  const PlanStats st = compute_stats(plan);
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << kNativePlanFormatVersion << ",\n";
  os << "  \"name\": " << json(plan.name).dump() << ",\n";
  os << "  \"metadata\": {\n";
  os << "    \"bounds\": [" << st.bounds.x0 << ", " << st.bounds.y0 << ", " << st.bounds.x1 << ", " << st.bounds.y1
     << "],\n";
  os << "    \"stitch_count\": " << st.stitch_count << ",\n";
  os << "    \"trim_count\": " << st.trim_count << ",\n";
  os << "    \"total_thread_length_mm\": " << json(rounded_length(st.total_thread_length_mm)).dump() << "\n";
  os << "  },\n";
  os << "  \"blocks\": [";
  for (size_t b = 0; b < plan.blocks.size(); ++b) {
    const PlanBlock& block = plan.blocks[b];
    os << (b == 0 ? "\n" : ",\n");
    os << "    {\n";
    os << "      \"role\": \"" << to_string(block.role) << "\",\n";
    os << "      \"stitches\": [";
    for (size_t i = 0; i < block.stitches.size(); ++i) {
      const Stitch& s = block.stitches[i];
      os << (i == 0 ? "\n" : ",\n");
      os << "        [" << s.x << ", " << s.y << ", \"" << to_string(s.kind) << "\"]";
    }
    os << (block.stitches.empty() ? "]\n" : "\n      ]\n");
    os << "    }";
  }
  os << (plan.blocks.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

StitchPlan read_native_plan(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("plan document: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "plan document must be an object");
    if (!doc.contains("format_version") || doc.at("format_version") != kNativePlanFormatVersion)
      throw Error(ErrorCode::SyntaxError, "unsupported plan format_version");
    StitchPlan plan;
    plan.name = doc.value("name", std::string{});
    for (const auto& jb : doc.at("blocks")) {
      PlanBlock block;
      block.role = block_role_from_string(jb.value("role", std::string{"unknown"}));
      for (const auto& js : jb.at("stitches")) {
        if (!js.is_array() || js.size() != 3) throw Error(ErrorCode::SyntaxError, "stitch must be [x, y, kind]");
        block.stitches.push_back({coordinate(js[0]), coordinate(js[1]), kind_from_string(js[2].get<std::string>())});
      }
      plan.blocks.push_back(std::move(block));
    }
    validate_plan(plan);
    if (doc.contains("metadata")) {
      const json& meta = doc.at("metadata");
      const PlanStats st = compute_stats(plan);
      if (meta.contains("bounds")) {
        const auto b = meta.at("bounds").get<std::vector<int32_t>>();
        if (b != std::vector<int32_t>{st.bounds.x0, st.bounds.y0, st.bounds.x1, st.bounds.y1})
          throw Error(ErrorCode::InvalidPlan, "metadata bounds disagree with the stitches");
      }
      if (meta.contains("stitch_count") && meta.at("stitch_count").get<size_t>() != st.stitch_count)
        throw Error(ErrorCode::InvalidPlan, "metadata stitch_count disagrees with the stitches");
      if (meta.contains("trim_count") && meta.at("trim_count").get<size_t>() != st.trim_count)
        throw Error(ErrorCode::InvalidPlan, "metadata trim_count disagrees with the stitches");
      if (meta.contains("total_thread_length_mm") &&
          std::abs(meta.at("total_thread_length_mm").get<double>() - st.total_thread_length_mm) > 0.01)
        throw Error(ErrorCode::InvalidPlan, "metadata thread length disagrees with the stitches");
    }
    return plan;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("plan document: ") + e.what());
  }
}

}  // namespace texstitch
