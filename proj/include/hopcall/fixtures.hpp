#pragma once

// Deterministic synthetic data and exhaustive oracles for the test suites.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hopcall/audio_io.hpp"
#include "hopcall/bout.hpp"
#include "hopcall/classifier.hpp"
#include "hopcall/hopfield.hpp"

namespace hopcall::fixtures {

inline constexpr int kFixtureSampleRate = 8000;

struct ToneComponent {
  double freq_hz = 0.0;
  double amplitude = 0.0;
};

struct SyntheticCallSpec {
  std::string label;
  std::vector<ToneComponent> components;
  double duration_s = 1.0;
  std::uint64_t seed = 0;
  double noise_db = -20.0;   // uniform noise level relative to the loudest component
  double fade_s = 0.01;      // raised-cosine onset and offset
};

/// Sum of sinusoids with a seeded uniform-noise overlay.
AudioBuffer synthesize_call(const SyntheticCallSpec& spec, int sample_rate_hz = kFixtureSampleRate);

// Stand-ins for the three stored sounds: two calls in the 0-1.3 kHz band and a
// low-frequency movement noise with a component near the grumble band.
SyntheticCallSpec grumble_call(double duration_s, std::uint64_t seed);
SyntheticCallSpec alarm_call(double duration_s, std::uint64_t seed);
SyntheticCallSpec movement_noise(double duration_s, std::uint64_t seed);

struct TimelineEvent {
  SyntheticCallSpec call;
  double start_s = 0.0;
};

struct CorpusSpec {
  std::string source_id = "corpus.wav";
  double duration_s = 60.0;
  int sample_rate_hz = kFixtureSampleRate;
  std::vector<TimelineEvent> events;
  BoutRules rules;
};

struct Corpus {
  std::string source_id;
  AudioBuffer audio;
  std::vector<Bout> labels;  // ground truth, sorted by start
};

/// Mixes the events into one recording (silence elsewhere) and derives the
/// ground truth: one bout per event whose label has a call rule, and the
/// call-free remainder cut into non-call bouts of at most noncall_max_s.
Corpus generate_corpus(const CorpusSpec& spec);

struct CorpusPaths {
  std::filesystem::path wav;
  std::filesystem::path labels;
};

/// Writes <dir>/<source_id> (16-bit PCM) and <dir>/<stem>_labels.csv.
CorpusPaths write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Randomised timeline of grumble and alarm bouts, every bout separated from
/// the next by at least 6 s of silence.
CorpusSpec call_corpus(double duration_s, std::uint64_t seed, const std::string& source_id = "corpus.wav");

/// call_corpus plus standalone movement-noise bursts in silent stretches and
/// one burst laid over a grumble bout.
CorpusSpec noise_overlap_corpus(double duration_s, std::uint64_t seed, const std::string& source_id = "noisy.wav");

/// Exemplar recordings for the stored sounds (1.5 s each).
std::vector<Exemplar> model1_exemplars(std::uint64_t seed = 7);
std::vector<Exemplar> model2_exemplars(std::uint64_t seed = 7);

// Bit i of a mask is set iff neuron i is +1.
std::uint32_t mask_of(const BipolarPattern& pattern);
BipolarPattern pattern_of(std::uint32_t mask, std::size_t n);

struct AttractorEntry {
  std::uint32_t final_state = 0;
  Outcome outcome = Outcome::Spurious;
  std::string label;  // empty unless Retrieved
  std::size_t passes = 0;
};

/// Runs the asynchronous dynamics from every one of the 2^N start states
/// using integer couplings rebuilt from the stored patterns and bitmask
/// states. Entry k is the run starting from mask k. Zero-bias models with
/// N <= 12 only.
std::vector<AttractorEntry> brute_force_attractors(const HopfieldModel& model,
                                                   std::size_t max_passes = kDefaultMaxPasses);

}  // namespace hopcall::fixtures
