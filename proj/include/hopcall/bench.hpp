#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hopcall/classifier.hpp"

namespace hopcall {

struct BenchOptions {
  ClassifierParams classifier;
  std::size_t store_repeats = 200;
  std::size_t classify_repeats = 1;
};

struct BenchResult {
  std::size_t segments = 0;            // per classification pass
  double audio_seconds = 0.0;
  double classify_seconds = 0.0;       // best pass, in-memory audio
  double segments_per_second = 0.0;
  double audio_hours_per_minute = 0.0;
  double store_ms = 0.0;               // median Hebbian storage of the model's patterns
  std::optional<double> store_pipeline_ms;  // median exemplar audio -> stored model
  std::optional<double> decode_seconds;     // file I/O, reported separately
};

/// Single-threaded timings on in-memory audio.
BenchResult run_bench(const HopfieldModel& model, const AudioBuffer& audio, const BenchOptions& options,
                      const std::vector<Exemplar>* exemplars = nullptr);

std::string format_bench_json(const BenchResult& result);

}  // namespace hopcall
