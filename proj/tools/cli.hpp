#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hopcall/classifier.hpp"
#include "hopcall/encoder.hpp"

namespace hopcall::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// Settings shared by the subcommands. Defaults are the 14-neuron two-call
/// configuration; a config file overrides them and flags override both.
struct RunConfig {
  double band_low_hz = 0.0;
  double band_high_hz = 1300.0;
  double threshold = 0.1;
  std::size_t n_neurons = 14;
  double segment_length_s = 1.0;
  std::size_t fft_length = 1024;
  double overlap = 0.5;
  std::string window = "hamming";
  std::size_t max_passes = kDefaultMaxPasses;
  bool strict_capacity = false;
  std::size_t jobs = 0;  // 0: one per hardware thread
  std::vector<std::pair<std::string, std::string>> exemplars;  // label, path
  std::vector<std::string> inputs;
  std::string output;
  std::string model;

  EncoderConfig encoder() const;
  SpectralParams spectral() const;
  /// Re-checks every constraint of the modules the values feed.
  void validate() const;
};

/// Applies `key = value` lines to `config`. Blank lines and `#` comments are
/// ignored; `exemplar` and `input` may repeat. Errors carry "name:line:".
void apply_config(std::istream& in, const std::string& name, RunConfig& config);

/// "label=path" with the label lowercased.
std::pair<std::string, std::string> parse_exemplar(const std::string& spec);

/// Expands shell-style wildcards; arguments without wildcards pass through.
std::vector<std::string> expand_inputs(const std::vector<std::string>& patterns);

/// Entry point; all normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hopcall::cli
