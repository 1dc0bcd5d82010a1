#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecgi {

enum class ErrorCode {
  UnreadableFile,
  UnsupportedFormat,
  TooSmall,
  RoiOutOfBounds,
  DimensionMismatch,
  EmptyImage,
  InvalidPmf,
  LengthMismatch,
  TooFewSamples,
  InvalidArgument,
  MalformedManifest,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception thrown by every pipeline stage. The code identifies the failure
/// class so callers (and tests) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecgi
