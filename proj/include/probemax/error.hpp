#ifndef PROBEMAX_ERROR_HPP
#define PROBEMAX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace probemax {

enum class ErrorCode {
  kInvalidDistribution,
  kInvalidInstance,
  kZeroTail,
  kIndexOutOfRange,
  kInvalidTolerance,
  kInvalidEpsilon,
  kDegenerateSet,
  kNotContinuous,
  kNotDiscrete,
  kInstanceTooLarge,
  kParse,
  kInvalidArgument,
  // Internal failures: a proven guarantee did not hold.
  kGuaranteeViolation,
  kSwapStall,
  kAlphaOutOfRange,
};

std::string_view to_string(ErrorCode code);

// True for codes that indicate a bug or numerical breakdown rather than bad
// input. The CLI maps these to exit code 2.
bool is_internal(ErrorCode code);

class ProbeError : public std::runtime_error {
 public:
  ProbeError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  [[nodiscard]] ErrorCode code() const { return code_; }
  // The message without the code prefix.
  [[nodiscard]] const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace probemax

#endif  // PROBEMAX_ERROR_HPP
