#include "hopcall/classifier.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "hopcall/csv.hpp"
#include "hopcall/encoder.hpp"
#include "hopcall/error.hpp"

namespace hopcall {

namespace {

void check_nyquist(int sample_rate_hz, const EncoderConfig& encoder) {
  if (encoder.band.high_hz > sample_rate_hz / 2.0) {
    throw Error(ErrorCode::BandExceedsNyquist, "band edge " + std::to_string(encoder.band.high_hz) +
                                                   " Hz is above Nyquist for " + std::to_string(sample_rate_hz) + " Hz");
  }
}

bool is_reserved_label(std::string_view label) { return label == kUnidLabel || label == "non-call"; }

}  // namespace

BipolarPattern pattern_from_audio(std::span<const double> samples, int sample_rate_hz, const EncoderConfig& encoder,
                                  const SpectralParams& spectral) {
  check_nyquist(sample_rate_hz, encoder);
  PowerSpectrum spectrum = power_spectrum(samples, sample_rate_hz, spectral);
  return encode(extract_peaks(spectrum, encoder.band, encoder.threshold), encoder);
}

SegmentClassification classify_segment(const HopfieldModel& model, const Segment& segment,
                                       const ClassifierParams& params) {
  const EncoderConfig& encoder = model.encoder_config();
  check_nyquist(segment.sample_rate_hz, encoder);

  SegmentClassification out;
  out.source_id = segment.source_id;
  out.segment_index = segment.index;
  out.start_time_s = segment.start_time_s;

  PowerSpectrum spectrum = power_spectrum(segment, params.spectral);
  PeakSet peaks = extract_peaks(spectrum, encoder.band, encoder.threshold);
  if (peaks.empty()) {
    out.label = kUnidLabel;
    return out;
  }
  ConvergenceResult result = converge(model, encode(peaks, encoder), params.max_passes);
  out.outcome = result.outcome;
  out.passes_used = result.passes_used;
  out.final_energy = result.final_energy;
  out.label = result.label ? *result.label : std::string(kUnidLabel);
  return out;
}

std::vector<SegmentClassification> classify_file(const HopfieldModel& model, const AudioBuffer& buffer,
                                                 const ClassifierParams& params, const std::string& source_id,
                                                 std::size_t workers) {
  check_nyquist(buffer.sample_rate_hz, model.encoder_config());
  params.spectral.validate();
  std::vector<Segment> segments = segment(buffer, params.segment_length_s, source_id);
  std::vector<SegmentClassification> rows(segments.size());

  workers = std::clamp<std::size_t>(workers, 1, segments.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < segments.size(); ++k) rows[k] = classify_segment(model, segments[k], params);
    return rows;
  }

  // Strided assignment; each worker writes only its own slots, so the result
  // is already in segment order.
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < segments.size(); k += workers) {
            rows[k] = classify_segment(model, segments[k], params);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

HopfieldModel store_from_audio(const std::vector<Exemplar>& exemplars, const EncoderConfig& encoder,
                               const SpectralParams& spectral, StoreOptions options) {
  encoder.validate();
  spectral.validate();
  std::vector<StoredPattern> patterns;
  patterns.reserve(exemplars.size());
  for (const auto& ex : exemplars) {
    if (is_reserved_label(ex.label) || ex.label.empty()) {
      throw Error(ErrorCode::InvalidArgument, "'" + ex.label + "' cannot be used as a class label");
    }
    BipolarPattern pattern = [&] {
      try {
        return pattern_from_audio(ex.audio.samples, ex.audio.sample_rate_hz, encoder, spectral);
      } catch (const Error& e) {
        throw Error(e.code(), "exemplar '" + ex.label + "': " + e.what());
      }
    }();
    if (pattern.active_count() == 0) {
      throw Error(ErrorCode::EmptyPeaks, "exemplar '" + ex.label + "' has no peak above the threshold in the band");
    }
    patterns.push_back(StoredPattern{std::move(pattern), ex.label});
  }
  return HopfieldModel::store(std::move(patterns), encoder, options);
}

void write_classifications(std::ostream& out, std::span<const SegmentClassification> rows) {
  out << kClassificationHeader << '\n';
  for (const auto& r : rows) {
    out << csv::escape(r.source_id) << ',' << r.segment_index << ',' << csv::format_time(r.start_time_s) << ','
        << csv::escape(r.label) << '\n';
  }
}

std::string format_classifications(std::span<const SegmentClassification> rows) {
  std::ostringstream out;
  write_classifications(out, rows);
  return out.str();
}

std::vector<SegmentClassification> read_classifications(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line) || line != kClassificationHeader) {
    throw Error(ErrorCode::SchemaError, "expected header '" + std::string(kClassificationHeader) + "'");
  }
  std::vector<SegmentClassification> rows;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split_record(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    SegmentClassification row;
    row.source_id = fields[0];
    long long index = csv::parse_integer(fields[1], line_no, "segment_index");
    if (index < 0) throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": negative segment_index");
    row.segment_index = static_cast<std::size_t>(index);
    row.start_time_s = csv::parse_real(fields[2], line_no, "start_time_s");
    row.label = csv::lowercase(fields[3]);
    if (row.label.empty()) throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": empty label");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hopcall
