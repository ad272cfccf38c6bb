#include "texstitch/error.h"

namespace texstitch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::EmptyChart: return "EmptyChart";
    case ErrorCode::UnknownTexture: return "UnknownTexture";
    case ErrorCode::LayoutOverflow: return "LayoutOverflow";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::HoopOverflow: return "HoopOverflow";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::DeltaOverflow: return "DeltaOverflow";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::TruncatedRecord: return "TruncatedRecord";
    case ErrorCode::UnknownRecordBits: return "UnknownRecordBits";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace texstitch
