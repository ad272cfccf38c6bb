#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace texstitch {

enum class ErrorCode {
  SyntaxError,
  RangeError,
  EmptyChart,
  UnknownTexture,
  LayoutOverflow,
  DegenerateRegion,
  HoopOverflow,
  InvalidPlan,
  DeltaOverflow,
  BadHeader,
  TruncatedRecord,
  UnknownRecordBits,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Non-fatal condition reported by a pipeline stage (degenerate path, missing glyph...).
struct Warning {
  std::string code;
  std::string message;

  bool operator==(const Warning&) const = default;
};

}  // namespace texstitch
