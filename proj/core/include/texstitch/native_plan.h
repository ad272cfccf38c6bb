#pragma once

#include <string>

#include "texstitch/stitch_plan.h"

namespace texstitch {

inline constexpr int kNativePlanFormatVersion = 1;

/// JSON document with `format_version`, `name`, `metadata` (bounds,
/// stitch_count, trim_count, total_thread_length_mm) and `blocks`, each
/// `{"role": ..., "stitches": [[x, y, "n"|"j"|"t"|"c"], ...]}` with one
/// stitch per line so plans diff cleanly.
std::string write_native_plan(const StitchPlan& plan);

/// Throws SyntaxError for malformed documents or unsupported versions and
/// InvalidPlan when the plan or its metadata does not check out.
StitchPlan read_native_plan(const std::string& text);

}  // namespace texstitch
