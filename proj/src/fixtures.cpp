#include "hopcall/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "hopcall/error.hpp"

namespace hopcall::fixtures {

namespace {

// Uniform in [-1, 1) straight from the engine output, so the stream does not
// depend on the standard library's distribution implementation.
double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) / 9007199254740992.0; }

// Label times are written with millisecond resolution; snapping here keeps
// the in-memory labels equal to what a reader gets back.
double to_millis(double t) { return static_cast<double>(std::llround(t * 1000.0)) / 1000.0; }

std::vector<Bout> noncall_bouts(const std::string& source, double duration_s, std::vector<Bout> calls,
                                const BoutRules& rules) {
  std::sort(calls.begin(), calls.end(), [](const Bout& a, const Bout& b) { return a.start_time_s < b.start_time_s; });
  std::vector<Bout> out;
  auto emit_gap = [&](double from, double to) {
    for (double t = from; t < to - 1e-9; t = to_millis(t + rules.noncall_max_s)) {
      double end = std::min(to, to_millis(t + rules.noncall_max_s));
      if (end - t >= rules.noncall_min_s - 1e-9) out.push_back(Bout{source, std::string(kNonCallClass), t, end});
    }
  };
  double cursor = 0.0;
  for (const auto& c : calls) {
    emit_gap(cursor, c.start_time_s);
    cursor = std::max(cursor, c.end_time_s);
  }
  emit_gap(cursor, duration_s);
  return out;
}

}  // namespace

AudioBuffer synthesize_call(const SyntheticCallSpec& spec, int sample_rate_hz) {
  if (spec.components.empty()) throw Error(ErrorCode::InvalidArgument, "call '" + spec.label + "' has no components");
  double loudest = 0.0;
  for (const auto& c : spec.components) {
    if (!(c.freq_hz > 0.0) || c.freq_hz >= sample_rate_hz / 2.0) {
      throw Error(ErrorCode::AliasedFrequency, "component " + std::to_string(c.freq_hz) + " Hz in '" + spec.label + "'");
    }
    loudest = std::max(loudest, c.amplitude);
  }
  AudioBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * sample_rate_hz));
  out.samples.assign(n, 0.0);

  const double noise_amp = loudest * std::pow(10.0, spec.noise_db / 20.0);
  const auto fade = std::min<std::size_t>(static_cast<std::size_t>(spec.fade_s * sample_rate_hz), n / 2);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate_hz;
    double v = 0.0;
    for (const auto& c : spec.components) v += c.amplitude * std::sin(2.0 * std::numbers::pi * c.freq_hz * t);
    v += noise_amp * uniform_pm1(rng);
    double gain = 1.0;
    if (fade > 0) {
      std::size_t edge = std::min(i, n - 1 - i);
      if (edge < fade) gain = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(edge) / fade);
    }
    out.samples[i] = std::clamp(v * gain, -1.0, 1.0);
  }
  return out;
}

SyntheticCallSpec grumble_call(double duration_s, std::uint64_t seed) {
  return SyntheticCallSpec{
      "grumble", {{160.0, 0.06}, {240.0, 0.06}, {320.0, 0.12}, {400.0, 0.06}, {480.0, 0.06}, {560.0, 0.06}}, duration_s, seed};
}

SyntheticCallSpec alarm_call(double duration_s, std::uint64_t seed) {
  return SyntheticCallSpec{
      "alarm", {{780.0, 0.06}, {850.0, 0.06}, {930.0, 0.12}, {1010.0, 0.06}, {1090.0, 0.06}, {1170.0, 0.06}}, duration_s, seed};
}

SyntheticCallSpec movement_noise(double duration_s, std::uint64_t seed) {
  return SyntheticCallSpec{
      "noise", {{70.0, 0.12}, {130.0, 0.06}, {200.0, 0.06}, {270.0, 0.06}, {330.0, 0.06}}, duration_s, seed};
}

Corpus generate_corpus(const CorpusSpec& spec) {
  spec.rules.validate();
  Corpus corpus;
  corpus.source_id = spec.source_id;
  corpus.audio.sample_rate_hz = spec.sample_rate_hz;
  corpus.audio.samples.assign(static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz)), 0.0);

  std::vector<Bout> calls;
  for (const auto& ev : spec.events) {
    if (ev.start_s < 0.0 || ev.start_s + ev.call.duration_s > spec.duration_s + 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "event '" + ev.call.label + "' at " + std::to_string(ev.start_s) +
                                                  " s does not fit in the corpus");
    }
    AudioBuffer clip = synthesize_call(ev.call, spec.sample_rate_hz);
    auto offset = static_cast<std::size_t>(std::llround(ev.start_s * spec.sample_rate_hz));
    for (std::size_t i = 0; i < clip.samples.size() && offset + i < corpus.audio.samples.size(); ++i) {
      corpus.audio.samples[offset + i] += clip.samples[i];
    }
    if (spec.rules.rule_for(ev.call.label)) {
      calls.push_back(Bout{spec.source_id, ev.call.label, to_millis(ev.start_s), to_millis(ev.start_s + ev.call.duration_s)});
    }
  }
  for (double& s : corpus.audio.samples) s = std::clamp(s, -1.0, 1.0);

  corpus.labels = noncall_bouts(spec.source_id, spec.duration_s, calls, spec.rules);
  corpus.labels.insert(corpus.labels.end(), calls.begin(), calls.end());
  std::sort(corpus.labels.begin(), corpus.labels.end(),
            [](const Bout& a, const Bout& b) { return a.start_time_s < b.start_time_s; });
  return corpus;
}

CorpusPaths write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  CorpusPaths paths;
  paths.wav = dir / corpus.source_id;
  paths.labels = dir / (std::filesystem::path(corpus.source_id).stem().string() + "_labels.csv");
  write_wav(corpus.audio, paths.wav, SampleFormat::Int16);
  save_bouts(corpus.labels, paths.labels);
  return paths;
}

CorpusSpec call_corpus(double duration_s, std::uint64_t seed, const std::string& source_id) {
  CorpusSpec spec;
  spec.source_id = source_id;
  spec.duration_s = duration_s;
  std::mt19937_64 rng(seed);
  // Times are kept in whole tenths of a second so labels print exactly.
  auto tenths = [&](double span) { return static_cast<long>(std::lround(uniform01(rng) * span * 10.0)); };
  long t = 20 + tenths(3.0);
  const long end = std::lround((duration_s - 2.0) * 10.0);
  std::uint64_t event_seed = seed * 1000;
  while (true) {
    bool alarm = uniform01(rng) < 0.25;
    long length = alarm ? 30 + tenths(4.0) : 20 + tenths(3.0);
    if (t + length > end) break;
    double len_s = static_cast<double>(length) / 10.0;
    spec.events.push_back({alarm ? alarm_call(len_s, ++event_seed) : grumble_call(len_s, ++event_seed),
                           static_cast<double>(t) / 10.0});
    t += length + 60 + tenths(10.0);
  }
  return spec;
}

CorpusSpec noise_overlap_corpus(double duration_s, std::uint64_t seed, const std::string& source_id) {
  CorpusSpec spec = call_corpus(duration_s, seed, source_id);
  std::vector<TimelineEvent> noise;
  std::uint64_t noise_seed = seed * 7919 + 1;

  // A 3 s burst centred in every third silent gap long enough to keep 1.5 s
  // of silence on both sides.
  int gap_count = 0;
  for (std::size_t i = 0; i + 1 < spec.events.size(); ++i) {
    double gap_start = spec.events[i].start_s + spec.events[i].call.duration_s;
    double gap_end = spec.events[i + 1].start_s;
    if (gap_end - gap_start < 6.0) continue;
    if (gap_count++ % 3 != 0) continue;
    double start = std::round((gap_start + gap_end) / 2.0 - 1.5);
    noise.push_back({movement_noise(3.0, ++noise_seed), start});
  }
  for (const auto& ev : spec.events) {
    if (ev.call.label == "grumble") {
      noise.push_back({movement_noise(std::min(2.0, ev.call.duration_s), ++noise_seed), ev.start_s});
      break;
    }
  }
  spec.events.insert(spec.events.end(), noise.begin(), noise.end());
  std::sort(spec.events.begin(), spec.events.end(),
            [](const TimelineEvent& a, const TimelineEvent& b) { return a.start_s < b.start_s; });
  return spec;
}

std::vector<Exemplar> model1_exemplars(std::uint64_t seed) {
  return {
      {synthesize_call(grumble_call(1.5, seed)), "grumble"},
      {synthesize_call(alarm_call(1.5, seed + 1)), "alarm"},
  };
}

std::vector<Exemplar> model2_exemplars(std::uint64_t seed) {
  auto out = model1_exemplars(seed);
  out.push_back({synthesize_call(movement_noise(1.5, seed + 2)), "noise"});
  return out;
}

std::uint32_t mask_of(const BipolarPattern& pattern) {
  if (pattern.size() > 32) throw Error(ErrorCode::InvalidArgument, "mask_of supports at most 32 neurons");
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] > 0) mask |= 1u << i;
  }
  return mask;
}

BipolarPattern pattern_of(std::uint32_t mask, std::size_t n) {
  std::vector<std::int8_t> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = (mask >> i) & 1u ? 1 : -1;
  return BipolarPattern(std::move(states));
}

std::vector<AttractorEntry> brute_force_attractors(const HopfieldModel& model, std::size_t max_passes) {
  const std::size_t n = model.size();
  if (n > 12) throw Error(ErrorCode::InvalidArgument, "exhaustive enumeration is limited to 12 neurons");
  if (model.has_bias()) throw Error(ErrorCode::InvalidArgument, "exhaustive enumeration supports zero bias only");

  // Integer outer-product sums with the diagonal left out.
  std::vector<std::uint32_t> stored;
  std::vector<int> c(n * n, 0);
  for (const auto& sp : model.stored()) {
    std::uint32_t m = mask_of(sp.pattern);
    stored.push_back(m);
    for (std::size_t i = 0; i < n; ++i) {
      int xi = (m >> i) & 1u ? 1 : -1;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        int xj = (m >> j) & 1u ? 1 : -1;
        c[i * n + j] += xi * xj;
      }
    }
  }

  const std::uint32_t total = 1u << n;
  std::vector<AttractorEntry> table(total);
  for (std::uint32_t start = 0; start < total; ++start) {
    std::uint32_t s = start;
    std::size_t passes = 0;
    bool settled = false;
    while (passes < max_passes) {
      ++passes;
      std::uint32_t before = s;
      for (std::size_t i = 0; i < n; ++i) {
        int field = 0;
        for (std::size_t j = 0; j < n; ++j) field += c[i * n + j] * ((s >> j) & 1u ? 1 : -1);
        if (field > 0) {
          s |= 1u << i;
        } else if (field < 0) {
          s &= ~(1u << i);
        }
      }
      if (s == before) {
        settled = true;
        break;
      }
    }
    AttractorEntry& e = table[start];
    e.final_state = s;
    e.passes = passes;
    if (!settled) {
      e.outcome = Outcome::NonConvergent;
      continue;
    }
    e.outcome = Outcome::Spurious;
    for (std::size_t k = 0; k < stored.size(); ++k) {
      if (stored[k] == s) {
        e.outcome = Outcome::Retrieved;
        e.label = model.stored()[k].label;
        break;
      }
    }
  }
  return table;
}

}  // namespace hopcall::fixtures
