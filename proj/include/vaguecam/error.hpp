#pragma once

#include <stdexcept>
#include <string>

namespace vaguecam {

enum class ErrorCode {
  kParse,
  kUnknownCategory,
  kDuplicateEntry,
  kInsufficientText,
  kEmptySentence,
  kEmptyText,
  kShapeMismatch,
  kOutOfRange,
  kInvalidArgument,
  kDegenerateVariance,
  kCheckpoint,
  kIo,
  kUnlabeled,
};

const char* to_string(ErrorCode code);

// All library failures are reported as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vaguecam
