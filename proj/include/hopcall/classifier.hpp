#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopcall/audio_io.hpp"
#include "hopcall/hopfield.hpp"
#include "hopcall/spectral.hpp"

namespace hopcall {

/// Label recorded for segments whose dynamics end anywhere but a stored
/// pattern, and for segments with no qualifying spectral peak.
inline constexpr std::string_view kUnidLabel = "unid";

struct ClassifierParams {
  SpectralParams spectral;
  double segment_length_s = 1.0;
  std::size_t max_passes = kDefaultMaxPasses;
};

struct SegmentClassification {
  std::string source_id;
  std::size_t segment_index = 0;
  double start_time_s = 0.0;
  std::string label;
  // Summary of the network run; `outcome` is empty when the segment had no
  // peaks and the network was not consulted.
  std::optional<Outcome> outcome;
  std::size_t passes_used = 0;
  double final_energy = 0.0;

  bool short_circuited() const { return !outcome.has_value(); }
};

/// Spectrum -> peaks -> pattern for one stretch of audio.
BipolarPattern pattern_from_audio(std::span<const double> samples, int sample_rate_hz, const EncoderConfig& encoder,
                                  const SpectralParams& spectral);

SegmentClassification classify_segment(const HopfieldModel& model, const Segment& segment,
                                       const ClassifierParams& params);

/// One classification per whole segment, ordered by segment index. With
/// workers > 1 the segments are classified concurrently.
std::vector<SegmentClassification> classify_file(const HopfieldModel& model, const AudioBuffer& buffer,
                                                 const ClassifierParams& params, const std::string& source_id = {},
                                                 std::size_t workers = 1);

struct Exemplar {
  AudioBuffer audio;
  std::string label;
};

/// Encodes each exemplar from its whole recording (as many FFT frames as
/// fit) and stores the patterns. Throws EmptyPeaks for an exemplar with no
/// peak above threshold in the band.
HopfieldModel store_from_audio(const std::vector<Exemplar>& exemplars, const EncoderConfig& encoder,
                               const SpectralParams& spectral, StoreOptions options = {});

inline constexpr std::string_view kClassificationHeader = "source_file,segment_index,start_time_s,label";

void write_classifications(std::ostream& out, std::span<const SegmentClassification> rows);
std::string format_classifications(std::span<const SegmentClassification> rows);
/// Parses the classification CSV; only the four CSV columns are populated.
std::vector<SegmentClassification> read_classifications(std::istream& in);

}  // namespace hopcall
