#include "probemax/error.hpp"

namespace probemax {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kZeroTail: return "ZeroTail";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidTolerance: return "InvalidTolerance";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kDegenerateSet: return "DegenerateSet";
    case ErrorCode::kNotContinuous: return "NotContinuous";
    case ErrorCode::kNotDiscrete: return "NotDiscrete";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kGuaranteeViolation: return "GuaranteeViolation";
    case ErrorCode::kSwapStall: return "SwapStall";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) {
  return code == ErrorCode::kGuaranteeViolation || code == ErrorCode::kSwapStall ||
         code == ErrorCode::kAlphaOutOfRange;
}

}  // namespace probemax
