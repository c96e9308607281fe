#include "hopcall/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>

#include "hopcall/error.hpp"

namespace hopcall {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<unsigned char>((v >> shift) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

// Decodes one sample of the given width to [-1, 1].
double decode_sample(const unsigned char* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatIeeeFloat) {
    float f;
    std::uint32_t raw = read_u32(p);
    std::memcpy(&f, &raw, sizeof f);
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  switch (bits) {
    case 8:  // unsigned, offset binary
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
  return 0.0;
}

}  // namespace

int bits_per_sample(SampleFormat format) {
  switch (format) {
    case SampleFormat::Int8: return 8;
    case SampleFormat::Int16: return 16;
    case SampleFormat::Int24: return 24;
    case SampleFormat::Int32: return 32;
    case SampleFormat::Float32: return 32;
  }
  return 0;
}

AudioBuffer decode_wav(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::CorruptHeader, "missing RIFF/WAVE signature");
  }

  std::optional<FmtChunk> fmt;
  std::span<const unsigned char> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::uint32_t size = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;

    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) throw Error(ErrorCode::CorruptHeader, "truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      FmtChunk parsed;
      parsed.format = read_u16(f);
      parsed.channels = read_u16(f + 2);
      parsed.sample_rate = read_u32(f + 4);
      parsed.block_align = read_u16(f + 12);
      parsed.bits = read_u16(f + 14);
      if (parsed.format == kFormatExtensible) {
        if (size < 40) throw Error(ErrorCode::CorruptHeader, "truncated WAVE_FORMAT_EXTENSIBLE");
        parsed.format = read_u16(f + 24);  // first two bytes of the subformat GUID
      }
      fmt = parsed;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      // Some writers leave the data size at 0xFFFFFFFF or overstate it while
      // streaming; accept whatever is actually present.
      data = bytes.subspan(body, std::min<std::size_t>(size, available));
      have_data = true;
      if (fmt) break;
    }
    std::size_t advance = 8 + static_cast<std::size_t>(size) + (size & 1);
    if (advance > bytes.size() - pos) break;
    pos += advance;
  }

  if (!fmt) throw Error(ErrorCode::CorruptHeader, "no fmt chunk");
  if (!have_data) throw Error(ErrorCode::CorruptHeader, "no data chunk");

  const FmtChunk& f = *fmt;
  if (f.format != kFormatPcm && f.format != kFormatIeeeFloat) {
    throw Error(ErrorCode::UnsupportedFormat, "codec 0x" + [&] {
      char buf[8];
      std::snprintf(buf, sizeof buf, "%04x", f.format);
      return std::string(buf);
    }());
  }
  bool int_ok = f.format == kFormatPcm && (f.bits == 8 || f.bits == 16 || f.bits == 24 || f.bits == 32);
  bool float_ok = f.format == kFormatIeeeFloat && f.bits == 32;
  if (!int_ok && !float_ok) {
    throw Error(ErrorCode::UnsupportedFormat, std::to_string(f.bits) + "-bit samples");
  }
  if (f.channels == 0 || f.sample_rate == 0) throw Error(ErrorCode::CorruptHeader, "zero channels or sample rate");
  std::size_t sample_bytes = f.bits / 8;
  if (f.block_align < sample_bytes * f.channels) throw Error(ErrorCode::CorruptHeader, "block align too small");

  std::size_t frames = data.size() / f.block_align;
  if (frames == 0) throw Error(ErrorCode::EmptyAudio, "data chunk holds no samples");

  AudioBuffer out;
  out.sample_rate_hz = static_cast<int>(f.sample_rate);
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data.data() + i * f.block_align;
    double sum = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) sum += decode_sample(frame + c * sample_bytes, f.format, f.bits);
    double mono = sum / f.channels;
    out.samples[i] = std::isfinite(mono) ? mono : 0.0;
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<unsigned char> encode_wav(const AudioBuffer& buffer, SampleFormat format) {
  if (buffer.sample_rate_hz <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  const int bits = bits_per_sample(format);
  const std::uint32_t bytes_per_sample = static_cast<std::uint32_t>(bits / 8);
  const std::uint32_t data_size = static_cast<std::uint32_t>(buffer.samples.size()) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size + (data_size & 1));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format == SampleFormat::Float32 ? kFormatIeeeFloat : kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate_hz) * bytes_per_sample);
  put_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, data_size);

  for (double s : buffer.samples) {
    double x = std::clamp(std::isfinite(s) ? s : 0.0, -1.0, 1.0);
    switch (format) {
      case SampleFormat::Int8: {
        long v = std::clamp(std::lround(x * 128.0), -128L, 127L);
        out.push_back(static_cast<unsigned char>(v + 128));
        break;
      }
      case SampleFormat::Int16: {
        long v = std::clamp(std::lround(x * 32768.0), -32768L, 32767L);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
        break;
      }
      case SampleFormat::Int24: {
        long v = std::clamp(std::lround(x * 8388608.0), -8388608L, 8388607L);
        auto u = static_cast<std::uint32_t>(v);
        out.push_back(static_cast<unsigned char>(u & 0xFF));
        out.push_back(static_cast<unsigned char>((u >> 8) & 0xFF));
        out.push_back(static_cast<unsigned char>((u >> 16) & 0xFF));
        break;
      }
      case SampleFormat::Int32: {
        long long v = std::clamp(std::llround(x * 2147483648.0), -2147483648LL, 2147483647LL);
        put_u32(out, static_cast<std::uint32_t>(static_cast<std::int32_t>(v)));
        break;
      }
      case SampleFormat::Float32: {
        float f = static_cast<float>(x);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof raw);
        put_u32(out, raw);
        break;
      }
    }
  }
  if (data_size & 1) out.push_back(0);
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path, SampleFormat format) {
  auto bytes = encode_wav(buffer, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::size_t segment_samples(double segment_length_s, int sample_rate_hz) {
  if (!(segment_length_s > 0.0) || sample_rate_hz <= 0) {
    throw Error(ErrorCode::InvalidArgument, "segment length and sample rate must be positive");
  }
  long long n = std::llround(segment_length_s * sample_rate_hz);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "segment shorter than one sample");
  return static_cast<std::size_t>(n);
}

std::vector<Segment> segment(const AudioBuffer& buffer, double segment_length_s, const std::string& source_id) {
  const std::size_t len = segment_samples(segment_length_s, buffer.sample_rate_hz);
  const std::size_t count = buffer.samples.size() / len;
  if (count == 0) {
    throw Error(ErrorCode::EmptyAudio, "recording shorter than one " + std::to_string(segment_length_s) + " s segment");
  }
  std::vector<Segment> out;
  out.reserve(count);
  std::span<const double> all(buffer.samples);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(Segment{all.subspan(k * len, len), buffer.sample_rate_hz,
                          static_cast<double>(k) * segment_length_s, k, source_id});
  }
  return out;
}

AudioBuffer synthesize_tone(double freq_hz, double duration_s, int sample_rate_hz, double amplitude) {
  if (sample_rate_hz <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  if (!(freq_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "frequency must be positive");
  if (freq_hz >= sample_rate_hz / 2.0) {
    throw Error(ErrorCode::AliasedFrequency,
                std::to_string(freq_hz) + " Hz is at or above Nyquist for " + std::to_string(sample_rate_hz) + " Hz");
  }
  if (!(amplitude > 0.0 && amplitude <= 1.0)) throw Error(ErrorCode::InvalidArgument, "amplitude must be in (0, 1]");
  if (!(duration_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be positive");

  AudioBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz)));
  const double step = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
  for (std::size_t n = 0; n < out.samples.size(); ++n) {
    out.samples[n] = amplitude * std::sin(step * static_cast<double>(n));
  }
  return out;
}

}  // namespace hopcall
