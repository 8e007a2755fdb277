#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wss {

enum class ErrorCode {
  RejectEmptySecurity,
  RejectLargeCoalition,
  RejectRange,
  SizeLimit,
  WrongCase,
  MissingLp,
  RetryExhausted,
  DimMismatch,
  FieldTooLarge,
  ParseError,
  InternalFault,
};

/// Upper-case tag used in CLI diagnostics, e.g. "REJECT_RANGE".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wss
