#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hopcall/spectral.hpp"

namespace hopcall {

/// Neuron state vector over {-1, +1}.
class BipolarPattern {
 public:
  BipolarPattern() = default;
  /// All neurons at -1.
  explicit BipolarPattern(std::size_t n) : states_(n, -1) {}
  /// Throws InvalidArgument if any value is not exactly -1 or +1.
  explicit BipolarPattern(std::vector<std::int8_t> states);

  std::size_t size() const { return states_.size(); }
  std::int8_t operator[](std::size_t i) const { return states_[i]; }
  void set(std::size_t i, std::int8_t v);
  void flip(std::size_t i) { states_[i] = static_cast<std::int8_t>(-states_[i]); }

  std::span<const std::int8_t> states() const { return states_; }
  std::size_t active_count() const;
  BipolarPattern negated() const;
  std::string to_string() const;  // '+' / '-' per neuron

  friend bool operator==(const BipolarPattern&, const BipolarPattern&) = default;

 private:
  std::vector<std::int8_t> states_;
};

struct EncoderConfig {
  std::size_t n_neurons = 14;
  FrequencyBand band{0.0, 1300.0};
  double threshold = 0.1;

  void validate() const;
  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

/// Equal-width frequency bins across the band; the top edge belongs to the
/// last bin.
std::size_t bin_of(double freq_hz, const EncoderConfig& config);

/// Neuron i fires (+1) iff some peak falls in its bin.
BipolarPattern encode(const PeakSet& peaks, const EncoderConfig& config);

}  // namespace hopcall
