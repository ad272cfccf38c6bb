#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "texstitch/pipeline.h"
#include "texstitch/texture_engine.h"

namespace texstitch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitStrict = 2;

/// Everything a command needs besides its input: pipeline options and the
/// icon and texture libraries.
struct Settings {
  CompileOptions options;
  IconLibrary icons = IconLibrary::builtin();
  TextureLibrary textures = TextureLibrary::builtin();
};

/// Merge a configuration document into `settings`. Relative paths in the
/// document resolve against `base_dir`. Throws SyntaxError for unknown keys
/// or wrongly typed values.
///
/// {
///   "planner": {"max_stitch_mm", "min_stitch_mm", "fill_row_spacing_mm", "fill_angle_deg",
///               "trim_threshold_mm", "hoop_width_mm", "hoop_height_mm", "machine_speed_spm"},
///   "lint":    {"scatter_min_stitches", "scatter_min_area_mm2", "continuity_len_mm",
///               "text_min_height_mm", "detail_merge_mm", "thread_width_mm"},
///   "layout":  {"tick_length_mm", "label_gap_mm", "title_gap_mm", "title_height_mm",
///               "label_orientation": "auto" | "horizontal" | "vertical", "outline_margin_mm"},
///   "icon_file": "icons.json",
///   "textures": {"id": {"kind": ...}}
/// }
void apply_config(const nlohmann::json& config, Settings& settings, const std::string& base_dir = ".");

/// Defaults, then the config file (if any), then an extra icon file.
Settings load_settings(const std::optional<std::string>& config_path, const std::optional<std::string>& icon_path);

enum class PlanFormat { Dst, Native };

/// `.dst` means DST, anything else the native plan; `forced` ("dst" or
/// "plan") wins when given. Throws SyntaxError for other forced values.
PlanFormat format_for(const std::string& path, const std::string& forced = {});

StitchPlan read_plan_file(const std::string& path, PlanFormat format);
void write_plan_file(const std::string& path, const StitchPlan& plan, PlanFormat format);

/// Run the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace texstitch::cli
