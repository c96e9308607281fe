#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hopcall {

/// Mono signal with amplitudes in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
  }
};

/// Fixed-length slice of a recording. Segments view their source buffer, so
/// the buffer must outlive them.
struct Segment {
  std::span<const double> samples;
  int sample_rate_hz = 0;
  double start_time_s = 0.0;
  std::size_t index = 0;
  std::string source_id;
};

enum class SampleFormat { Int8, Int16, Int24, Int32, Float32 };

int bits_per_sample(SampleFormat format);

/// Decodes a RIFF/WAVE file. Integer PCM (8/16/24/32 bit) and IEEE float32,
/// including WAVE_FORMAT_EXTENSIBLE wrappers around either. Multi-channel
/// input is averaged to mono.
AudioBuffer read_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const unsigned char> bytes);

/// Encodes a mono buffer; samples are clamped to [-1, 1] and rounded to the
/// nearest code of the target format.
std::vector<unsigned char> encode_wav(const AudioBuffer& buffer,
                                      SampleFormat format = SampleFormat::Int16);
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               SampleFormat format = SampleFormat::Int16);

/// Number of samples in one segment; segment_length_s * rate is rounded to
/// the nearest integer and must be at least one.
std::size_t segment_samples(double segment_length_s, int sample_rate_hz);

/// Consecutive non-overlapping segments. A trailing partial segment is
/// dropped. Throws EmptyAudio when no whole segment fits.
std::vector<Segment> segment(const AudioBuffer& buffer, double segment_length_s,
                             const std::string& source_id = {});

AudioBuffer synthesize_tone(double freq_hz, double duration_s, int sample_rate_hz,
                            double amplitude);

}  // namespace hopcall
