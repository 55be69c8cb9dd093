#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newssum {

enum class ErrorCode {
  kFileNotFound,
  kMalformedRow,
  kMissingColumn,
  kEmptyInput,
  kEmptyCorpus,
  kMissingModel,
  kFeatureSpaceMismatch,
  kTooManySentences,
  kInvalidArgument,
  kParseError,
  kIoError,
  kAuthError,
  kRateLimited,
  kTransport,
  kBadPayload,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every library failure is reported as an Error carrying one of the codes
// above; callers that need to branch (CLI exit codes, HTTP status mapping)
// switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace newssum
