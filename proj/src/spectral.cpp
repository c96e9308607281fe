#include "hopcall/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "hopcall/error.hpp"

namespace hopcall {

namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }
  const fftw_complex* output() const { return out_; }
  void execute() { fftw_execute(plan_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

RealFft& fft_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// Periodogram into `out` (size n/2+1), reusing the thread's FFT buffers.
void periodogram_into(std::span<const double> frame, std::span<const double> window, std::span<double> out) {
  const std::size_t n = frame.size();
  RealFft& fft = fft_for(n);
  double* in = fft.input();
  for (std::size_t i = 0; i < n; ++i) in[i] = frame[i] * window[i];
  fft.execute();
  const fftw_complex* spec = fft.output();
  const double scale = 1.0 / static_cast<double>(n);
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    double mag2 = spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1];
    out[k] = (k == 0 || k == half) ? mag2 * scale : 2.0 * mag2 * scale;
  }
}

const std::vector<double>& cached_window(WindowFunction window, std::size_t length) {
  thread_local std::map<std::pair<int, std::size_t>, std::vector<double>> cache;
  auto key = std::make_pair(static_cast<int>(window), length);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_window(window, length)).first;
  return it->second;
}

}  // namespace

std::string_view to_string(WindowFunction window) {
  switch (window) {
    case WindowFunction::Hamming: return "hamming";
    case WindowFunction::Hann: return "hann";
    case WindowFunction::Rectangular: return "rectangular";
  }
  return "unknown";
}

WindowFunction parse_window(std::string_view text) {
  std::string name(text);
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "hamming") return WindowFunction::Hamming;
  if (name == "hann") return WindowFunction::Hann;
  if (name == "rectangular") return WindowFunction::Rectangular;
  throw Error(ErrorCode::InvalidArgument, "unknown window '" + std::string(text) + "'");
}

std::vector<double> make_window(WindowFunction window, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    double phase = 2.0 * std::numbers::pi * static_cast<double>(n) / denom;
    switch (window) {
      case WindowFunction::Hamming: w[n] = 0.54 - 0.46 * std::cos(phase); break;
      case WindowFunction::Hann: w[n] = 0.5 - 0.5 * std::cos(phase); break;
      case WindowFunction::Rectangular: break;
    }
  }
  return w;
}

std::size_t SpectralParams::hop() const {
  auto h = static_cast<std::size_t>(std::llround(static_cast<double>(fft_length) * (1.0 - overlap)));
  return std::max<std::size_t>(h, 1);
}

void SpectralParams::validate() const {
  if (!is_power_of_two(fft_length)) {
    throw Error(ErrorCode::InvalidArgument, "fft_length must be a power of two, got " + std::to_string(fft_length));
  }
  if (!(overlap >= 0.0 && overlap < 1.0)) throw Error(ErrorCode::InvalidArgument, "overlap must be in [0, 1)");
}

std::vector<double> frame_periodogram(std::span<const double> frame, std::span<const double> window) {
  if (!is_power_of_two(frame.size())) throw Error(ErrorCode::InvalidArgument, "frame length must be a power of two");
  if (window.size() != frame.size()) throw Error(ErrorCode::DimensionMismatch, "window and frame lengths differ");
  std::vector<double> out(frame.size() / 2 + 1);
  periodogram_into(frame, window, out);
  return out;
}

PowerSpectrum welch_spectrum(std::span<const double> samples, int sample_rate_hz, const SpectralParams& params) {
  params.validate();
  const std::size_t n = params.fft_length;
  if (samples.size() < n) {
    throw Error(ErrorCode::SegmentTooShort,
                std::to_string(samples.size()) + " samples, fft_length " + std::to_string(n));
  }
  if (sample_rate_hz <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");

  const auto& window = cached_window(params.window, n);
  const std::size_t hop = params.hop();
  const std::size_t frames = (samples.size() - n) / hop + 1;

  PowerSpectrum out;
  out.power.assign(n / 2 + 1, 0.0);
  out.bin_width_hz = static_cast<double>(sample_rate_hz) / static_cast<double>(n);
  std::vector<double> frame_power(n / 2 + 1);
  for (std::size_t f = 0; f < frames; ++f) {
    periodogram_into(samples.subspan(f * hop, n), window, frame_power);
    for (std::size_t k = 0; k < frame_power.size(); ++k) out.power[k] += frame_power[k];
  }
  for (double& p : out.power) p /= static_cast<double>(frames);
  return out;
}

PowerSpectrum normalize(PowerSpectrum spectrum) {
  double peak = 0.0;
  for (double p : spectrum.power) peak = std::max(peak, p);
  if (peak > 0.0) {
    for (double& p : spectrum.power) p = p == peak ? 1.0 : p / peak;
  }
  spectrum.normalized = true;
  return spectrum;
}

PowerSpectrum power_spectrum(std::span<const double> samples, int sample_rate_hz, const SpectralParams& params) {
  return normalize(welch_spectrum(samples, sample_rate_hz, params));
}

PowerSpectrum power_spectrum(const Segment& segment, const SpectralParams& params) {
  return power_spectrum(segment.samples, segment.sample_rate_hz, params);
}

PeakSet extract_peaks(const PowerSpectrum& spectrum, FrequencyBand band, double threshold) {
  if (!spectrum.normalized) throw Error(ErrorCode::InvalidArgument, "extract_peaks needs a normalized spectrum");
  if (!(band.low_hz >= 0.0 && band.low_hz < band.high_hz)) {
    throw Error(ErrorCode::InvalidArgument, "band must satisfy 0 <= low < high");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be in (0, 1)");

  PeakSet out;
  out.band = band;
  out.threshold = threshold;
  const auto& p = spectrum.power;
  const std::size_t n = p.size();
  std::size_t i = 0;
  while (i < n) {
    // [i, j) is a run of equal values.
    std::size_t j = i + 1;
    while (j < n && p[j] == p[i]) ++j;
    bool above_left = i == 0 || p[i] > p[i - 1];
    bool above_right = j == n || p[i] > p[j];
    if (above_left && above_right && p[i] >= threshold && p[i] > 0.0) {
      double f = spectrum.frequency_of(i);
      if (band.contains(f)) out.peaks.push_back(Peak{f, p[i], i});
    }
    i = j;
  }
  return out;
}

RgbImage render_spectrogram(const AudioBuffer& buffer, const SpectrogramOptions& options) {
  const SpectralParams& params = options.spectral;
  params.validate();
  const std::size_t n = params.fft_length;
  if (buffer.samples.size() < n) {
    throw Error(ErrorCode::SegmentTooShort, "recording shorter than one " + std::to_string(n) + "-sample frame");
  }
  if (!(options.dynamic_range_db > 0.0)) throw Error(ErrorCode::InvalidArgument, "dynamic range must be positive");

  const auto& window = cached_window(params.window, n);
  const std::size_t hop = params.hop();
  const std::size_t frames = (buffer.samples.size() - n) / hop + 1;
  const std::size_t bins = n / 2 + 1;
  std::span<const double> all(buffer.samples);

  std::vector<double> cells(frames * bins);
  double loudest = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    std::span<double> column(cells.data() + f * bins, bins);
    periodogram_into(all.subspan(f * hop, n), window, column);
    for (double v : column) loudest = std::max(loudest, v);
  }

  RgbImage image(frames, bins);
  const double floor_db = -options.dynamic_range_db;
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t k = 0; k < bins; ++k) {
      double v = cells[f * bins + k];
      double db = (loudest > 0.0 && v > 0.0) ? 10.0 * std::log10(v / loudest) : floor_db;
      double t = (std::max(db, floor_db) - floor_db) / options.dynamic_range_db;
      image.at(f, bins - 1 - k) = heat_color(t);
    }
  }
  return image;
}

void spectrogram_image(const AudioBuffer& buffer, const SpectrogramOptions& options, const std::filesystem::path& out) {
  write_png(render_spectrogram(buffer, options), out);
}

void spectrogram_image(const AudioBuffer& buffer, std::size_t fft_length, const std::filesystem::path& out) {
  SpectrogramOptions options;
  options.spectral.fft_length = fft_length;
  spectrogram_image(buffer, options, out);
}

}  // namespace hopcall
