#include "hopcall/bench.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

namespace hopcall {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double median_ms(std::size_t repeats, F&& body) {
  std::vector<double> samples;
  samples.reserve(repeats);
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    auto t0 = Clock::now();
    body();
    samples.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

BenchResult run_bench(const HopfieldModel& model, const AudioBuffer& audio, const BenchOptions& options,
                      const std::vector<Exemplar>* exemplars) {
  BenchResult result;
  result.audio_seconds = audio.duration_s();

  result.store_ms = median_ms(options.store_repeats, [&] {
    auto copy = model.stored();
    auto rebuilt = HopfieldModel::store(std::move(copy), model.encoder_config());
    (void)rebuilt;
  });
  if (exemplars) {
    result.store_pipeline_ms = median_ms(options.store_repeats, [&] {
      auto rebuilt = store_from_audio(*exemplars, model.encoder_config(), options.classifier.spectral);
      (void)rebuilt;
    });
  }

  double best = 0.0;
  for (std::size_t r = 0; r < std::max<std::size_t>(options.classify_repeats, 1); ++r) {
    auto t0 = Clock::now();
    auto rows = classify_file(model, audio, options.classifier, "bench", 1);
    double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    result.segments = rows.size();
    if (r == 0 || elapsed < best) best = elapsed;
  }
  result.classify_seconds = best;
  if (best > 0.0) {
    result.segments_per_second = static_cast<double>(result.segments) / best;
    result.audio_hours_per_minute = result.audio_seconds / best * 60.0 / 3600.0;
  }
  return result;
}

std::string format_bench_json(const BenchResult& r) {
  nlohmann::ordered_json doc;
  doc["segments"] = r.segments;
  doc["audio_seconds"] = r.audio_seconds;
  doc["classify_seconds"] = r.classify_seconds;
  doc["segments_per_second"] = r.segments_per_second;
  doc["audio_hours_per_minute"] = r.audio_hours_per_minute;
  doc["store_ms"] = r.store_ms;
  doc["store_pipeline_ms"] = r.store_pipeline_ms ? nlohmann::ordered_json(*r.store_pipeline_ms) : nullptr;
  doc["decode_seconds"] = r.decode_seconds ? nlohmann::ordered_json(*r.decode_seconds) : nullptr;
  doc["threads"] = 1;
  return doc.dump(2) + "\n";
}

}  // namespace hopcall
