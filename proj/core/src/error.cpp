#include "wss/error.hpp"

namespace wss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RejectEmptySecurity: return "REJECT_EMPTY_SECURITY";
    case ErrorCode::RejectLargeCoalition: return "REJECT_LARGE_COALITION";
    case ErrorCode::RejectRange: return "REJECT_RANGE";
    case ErrorCode::SizeLimit: return "SIZE_LIMIT";
    case ErrorCode::WrongCase: return "WRONG_CASE";
    case ErrorCode::MissingLp: return "MISSING_LP";
    case ErrorCode::RetryExhausted: return "RETRY_EXHAUSTED";
    case ErrorCode::DimMismatch: return "DIM_MISMATCH";
    case ErrorCode::FieldTooLarge: return "FIELD_TOO_LARGE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InternalFault: return "INTERNAL_FAULT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace wss
