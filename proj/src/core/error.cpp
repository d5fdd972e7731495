#include "chronicle/error.hpp"

namespace chronicle {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kProtocolViolation: return "protocol_violation";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kUnknownRequest: return "unknown_request";
    case ErrorCode::kDuplicateResponse: return "duplicate_response";
    case ErrorCode::kExhaustedProfile: return "exhausted_profile";
    case ErrorCode::kScheduling: return "scheduling";
    case ErrorCode::kEmptyQueue: return "empty_queue";
    case ErrorCode::kGeneration: return "generation";
    case ErrorCode::kDegenerateData: return "degenerate_data";
    case ErrorCode::kDegenerateSample: return "degenerate_sample";
    case ErrorCode::kStuckSession: return "stuck_session";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kReplayDivergence: return "replay_divergence";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace chronicle
