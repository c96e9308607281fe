#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "hopcall/audio_io.hpp"
#include "hopcall/png_image.hpp"

namespace hopcall {

enum class WindowFunction { Hamming, Hann, Rectangular };

std::string_view to_string(WindowFunction window);
WindowFunction parse_window(std::string_view name);

/// Symmetric window of the given length.
std::vector<double> make_window(WindowFunction window, std::size_t length);

struct SpectralParams {
  std::size_t fft_length = 1024;
  WindowFunction window = WindowFunction::Hamming;
  double overlap = 0.5;  // fraction of fft_length shared by consecutive frames

  std::size_t hop() const;
  void validate() const;
};

struct PowerSpectrum {
  std::vector<double> power;  // fft_length/2 + 1 one-sided bins
  double bin_width_hz = 0.0;
  bool normalized = false;

  double frequency_of(std::size_t bin) const { return static_cast<double>(bin) * bin_width_hz; }
};

struct FrequencyBand {
  double low_hz = 0.0;
  double high_hz = 0.0;

  bool contains(double f) const { return f >= low_hz && f <= high_hz; }
  friend bool operator==(const FrequencyBand&, const FrequencyBand&) = default;
};

struct Peak {
  double freq_hz = 0.0;
  double power = 0.0;
  std::size_t bin = 0;
};

struct PeakSet {
  std::vector<Peak> peaks;  // ascending frequency
  FrequencyBand band;
  double threshold = 0.0;

  bool empty() const { return peaks.empty(); }
};

/// One-sided periodogram of a single windowed frame, scaled so the bins sum
/// to the energy of the windowed frame.
std::vector<double> frame_periodogram(std::span<const double> frame, std::span<const double> window);

/// Welch average of frame periodograms; not normalized.
PowerSpectrum welch_spectrum(std::span<const double> samples, int sample_rate_hz, const SpectralParams& params);

/// Scales so the maximum bin is exactly 1. An all-zero spectrum stays zero.
PowerSpectrum normalize(PowerSpectrum spectrum);

PowerSpectrum power_spectrum(std::span<const double> samples, int sample_rate_hz, const SpectralParams& params);
PowerSpectrum power_spectrum(const Segment& segment, const SpectralParams& params);

/// Local maxima of a normalized spectrum inside the band with power at or
/// above threshold. A flat run of equal bins counts as one maximum reported at
/// its lowest bin; bins beyond either end of the spectrum count as lower.
PeakSet extract_peaks(const PowerSpectrum& spectrum, FrequencyBand band, double threshold);

struct SpectrogramOptions {
  SpectralParams spectral;
  double dynamic_range_db = 80.0;
};

/// Short-time power in dB relative to the loudest cell, one column per frame
/// and row 0 at the highest frequency.
RgbImage render_spectrogram(const AudioBuffer& buffer, const SpectrogramOptions& options = {});

void spectrogram_image(const AudioBuffer& buffer, std::size_t fft_length, const std::filesystem::path& out);
void spectrogram_image(const AudioBuffer& buffer, const SpectrogramOptions& options, const std::filesystem::path& out);

}  // namespace hopcall
