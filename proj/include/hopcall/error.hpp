#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hopcall {

enum class ErrorCode {
  UnsupportedFormat,
  CorruptHeader,
  EmptyAudio,
  AliasedFrequency,
  InvalidArgument,
  SegmentTooShort,
  BandExceedsNyquist,
  OutOfBand,
  ConfigMismatch,
  CapacityExceeded,
  DimensionMismatch,
  DuplicateLabel,
  NoPatterns,
  EmptyPeaks,
  UnsortedInput,
  MixedSources,
  SchemaError,
  InvariantViolation,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported as hopcall::Error; code() identifies the
// failure class, what() carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hopcall
