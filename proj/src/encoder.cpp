#include "hopcall/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "hopcall/error.hpp"

namespace hopcall {

BipolarPattern::BipolarPattern(std::vector<std::int8_t> states) : states_(std::move(states)) {
  for (auto v : states_) {
    if (v != 1 && v != -1) throw Error(ErrorCode::InvalidArgument, "pattern values must be -1 or +1");
  }
}

void BipolarPattern::set(std::size_t i, std::int8_t v) {
  if (v != 1 && v != -1) throw Error(ErrorCode::InvalidArgument, "pattern values must be -1 or +1");
  states_.at(i) = v;
}

std::size_t BipolarPattern::active_count() const {
  return static_cast<std::size_t>(std::count(states_.begin(), states_.end(), std::int8_t{1}));
}

BipolarPattern BipolarPattern::negated() const {
  BipolarPattern out = *this;
  for (auto& v : out.states_) v = static_cast<std::int8_t>(-v);
  return out;
}

std::string BipolarPattern::to_string() const {
  std::string s;
  s.reserve(states_.size());
  for (auto v : states_) s.push_back(v > 0 ? '+' : '-');
  return s;
}

void EncoderConfig::validate() const {
  if (n_neurons < 2) throw Error(ErrorCode::InvalidArgument, "n_neurons must be at least 2");
  if (!(band.low_hz >= 0.0 && band.low_hz < band.high_hz)) {
    throw Error(ErrorCode::InvalidArgument, "band must satisfy 0 <= low < high");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be in (0, 1)");
}

std::size_t bin_of(double freq_hz, const EncoderConfig& config) {
  if (!config.band.contains(freq_hz)) {
    throw Error(ErrorCode::OutOfBand, std::to_string(freq_hz) + " Hz outside [" + std::to_string(config.band.low_hz) +
                                          ", " + std::to_string(config.band.high_hz) + "]");
  }
  const double width = config.band.high_hz - config.band.low_hz;
  const double scaled = (freq_hz - config.band.low_hz) / width * static_cast<double>(config.n_neurons);
  auto index = static_cast<std::size_t>(std::floor(scaled));
  return std::min(index, config.n_neurons - 1);
}

BipolarPattern encode(const PeakSet& peaks, const EncoderConfig& config) {
  if (!(peaks.band == config.band)) throw Error(ErrorCode::ConfigMismatch, "peak band differs from encoder band");
  BipolarPattern pattern(config.n_neurons);
  for (const Peak& peak : peaks.peaks) pattern.set(bin_of(peak.freq_hz, config), 1);
  return pattern;
}

}  // namespace hopcall
