#include "newssum/error.hpp"

namespace newssum {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kFileNotFound:
      return "FileNotFound";
    case ErrorCode::kMalformedRow:
      return "MalformedRow";
    case ErrorCode::kMissingColumn:
      return "MissingColumn";
    case ErrorCode::kEmptyInput:
      return "EmptyInput";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kMissingModel:
      return "MissingModel";
    case ErrorCode::kFeatureSpaceMismatch:
      return "FeatureSpaceMismatch";
    case ErrorCode::kTooManySentences:
      return "TooManySentences";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kAuthError:
      return "AuthError";
    case ErrorCode::kRateLimited:
      return "RateLimited";
    case ErrorCode::kTransport:
      return "Transport";
    case ErrorCode::kBadPayload:
      return "BadPayload";
  }
  return "Unknown";
}

}  // namespace newssum
