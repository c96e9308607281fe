#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopcall/encoder.hpp"

namespace hopcall {

struct StoredPattern {
  BipolarPattern pattern;
  std::string label;
};

/// floor(0.138 N): the classic estimate of how many random bipolar patterns
/// a Hebbian network of N neurons retrieves reliably.
std::size_t capacity_bound(std::size_t n_neurons);
/// ceil(0.138 N): largest p accepted when CapacityPolicy::AllowBoundary is in
/// effect (a 14-neuron network holding two patterns sits here).
std::size_t boundary_capacity(std::size_t n_neurons);

// Unchecked skips the capacity test entirely (analysis of small toy networks).
enum class CapacityPolicy { Strict, AllowBoundary, Unchecked };
enum class CapacityStatus { WithinBound, AtBoundary, OverCapacity };

std::string_view to_string(CapacityStatus status);

struct StoreOptions {
  CapacityPolicy capacity = CapacityPolicy::AllowBoundary;
};

/// A discrete Hopfield network trained with the Hebbian outer-product rule.
///
/// Couplings are kept as the integer sums C_ij = sum_k x_i^k x_j^k (zero
/// diagonal); the weights are W = C / N. The dynamics evaluate local fields
/// from C so that the sign of a field is exact, which makes the tie rule
/// (a zero field keeps the neuron's state) well defined.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class HopfieldModel {
 public:
  /// Hebbian storage. Throws NoPatterns, DimensionMismatch, DuplicateLabel,
  /// InvalidArgument (two labels with identical patterns), CapacityExceeded.
  static HopfieldModel store(std::vector<StoredPattern> patterns, EncoderConfig config, StoreOptions options = {});

  /// Copy with the given input bias (one entry per neuron).
  HopfieldModel with_bias(std::vector<double> bias) const;

  std::size_t size() const { return config_.n_neurons; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i * size() + j]; }
  std::int32_t coupling(std::size_t i, std::size_t j) const { return couplings_[i * size() + j]; }
  std::span<const double> weights() const { return weights_; }  // row-major N x N
  std::span<const double> bias() const { return bias_; }
  bool has_bias() const { return has_bias_; }
  const std::vector<StoredPattern>& stored() const { return stored_; }
  const EncoderConfig& encoder_config() const { return config_; }
  CapacityStatus capacity_status() const { return capacity_status_; }

  /// Label of the stored pattern equal to `state`, if any.
  std::optional<std::string> label_of(const BipolarPattern& state) const;

  /// N * (local field of neuron i) for zero bias; exact.
  std::int64_t scaled_field(std::size_t i, const BipolarPattern& state) const;

 private:
  HopfieldModel() = default;

  EncoderConfig config_;
  std::vector<std::int32_t> couplings_;
  std::vector<double> weights_;
  std::vector<double> bias_;
  bool has_bias_ = false;
  std::vector<StoredPattern> stored_;
  CapacityStatus capacity_status_ = CapacityStatus::WithinBound;
};

/// E = -1/2 sum_ij w_ij x_i x_j - sum_i I_i x_i
double energy(const HopfieldModel& model, const BipolarPattern& state);

enum class Outcome { Retrieved, Spurious, NonConvergent };

std::string_view to_string(Outcome outcome);

struct ConvergenceResult {
  BipolarPattern final_state;
  Outcome outcome = Outcome::Spurious;
  std::optional<std::string> label;  // set iff outcome == Retrieved
  std::size_t passes_used = 0;
  std::size_t flips = 0;
  double final_energy = 0.0;
};

/// Called after every neuron flip with the flipped index and the new state.
using UpdateObserver = std::function<void(std::size_t neuron, const BipolarPattern& state)>;

inline constexpr std::size_t kDefaultMaxPasses = 100;

/// Asynchronous updates in index order 0..N-1, x_i <- sign(h_i) with a zero
/// field leaving x_i unchanged. Stops after the first pass without a flip
/// (that pass is counted) or after max_passes passes.
ConvergenceResult converge(const HopfieldModel& model, BipolarPattern initial, std::size_t max_passes = kDefaultMaxPasses,
                           const UpdateObserver& observer = {});

}  // namespace hopcall
