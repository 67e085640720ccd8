#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatknot {

enum class ErrorCode {
  MalformedToken,
  LabelCountMismatch,
  NonContiguousLabels,
  InvalidGap,
  SiteMismatch,
  OrbitBudgetExceeded,
  UnknownArrow,
  IoError,
  FormatVersionMismatch,
  MalformedRecord,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::LabelCountMismatch: return "LabelCountMismatch";
    case ErrorCode::NonContiguousLabels: return "NonContiguousLabels";
    case ErrorCode::InvalidGap: return "InvalidGap";
    case ErrorCode::SiteMismatch: return "SiteMismatch";
    case ErrorCode::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorCode::UnknownArrow: return "UnknownArrow";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatknot
