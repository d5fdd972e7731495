#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chronicle {

enum class ErrorCode {
  kProtocolViolation,
  kConfiguration,
  kUnknownRequest,
  kDuplicateResponse,
  kExhaustedProfile,
  kScheduling,
  kEmptyQueue,
  kGeneration,
  kDegenerateData,
  kDegenerateSample,
  kStuckSession,
  kParse,
  kReplayDivergence,
  kIo,
};

// Stable machine-readable name, e.g. "protocol_violation".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chronicle
