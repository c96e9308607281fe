#include "hopcall/error.hpp"

namespace hopcall {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::EmptyAudio: return "EmptyAudio";
    case ErrorCode::AliasedFrequency: return "AliasedFrequency";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SegmentTooShort: return "SegmentTooShort";
    case ErrorCode::BandExceedsNyquist: return "BandExceedsNyquist";
    case ErrorCode::OutOfBand: return "OutOfBand";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NoPatterns: return "NoPatterns";
    case ErrorCode::EmptyPeaks: return "EmptyPeaks";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::MixedSources: return "MixedSources";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hopcall
