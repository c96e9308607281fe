#include "hopcall/hopfield.hpp"

#include <cmath>
#include <set>

#include "hopcall/error.hpp"

namespace hopcall {

namespace {

constexpr double kCapacityRatio = 0.138;

}  // namespace

std::size_t capacity_bound(std::size_t n_neurons) {
  return static_cast<std::size_t>(std::floor(kCapacityRatio * static_cast<double>(n_neurons)));
}

std::size_t boundary_capacity(std::size_t n_neurons) {
  return static_cast<std::size_t>(std::ceil(kCapacityRatio * static_cast<double>(n_neurons)));
}

std::string_view to_string(CapacityStatus status) {
  switch (status) {
    case CapacityStatus::WithinBound: return "within-bound";
    case CapacityStatus::AtBoundary: return "at-boundary";
    case CapacityStatus::OverCapacity: return "over-capacity";
  }
  return "unknown";
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Retrieved: return "retrieved";
    case Outcome::Spurious: return "spurious";
    case Outcome::NonConvergent: return "non-convergent";
  }
  return "unknown";
}

HopfieldModel HopfieldModel::store(std::vector<StoredPattern> patterns, EncoderConfig config, StoreOptions options) {
  config.validate();
  const std::size_t n = config.n_neurons;
  const std::size_t p = patterns.size();
  if (p == 0) throw Error(ErrorCode::NoPatterns, "at least one pattern is required");

  std::set<std::string> labels;
  for (const auto& sp : patterns) {
    if (sp.pattern.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "pattern '" + sp.label + "' has " + std::to_string(sp.pattern.size()) +
                                                    " neurons, network has " + std::to_string(n));
    }
    if (!labels.insert(sp.label).second) throw Error(ErrorCode::DuplicateLabel, "label '" + sp.label + "' repeated");
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      if (patterns[a].pattern == patterns[b].pattern) {
        throw Error(ErrorCode::InvalidArgument,
                    "labels '" + patterns[a].label + "' and '" + patterns[b].label + "' encode to the same pattern");
      }
    }
  }

  CapacityStatus status = CapacityStatus::WithinBound;
  if (p > capacity_bound(n)) {
    if (options.capacity == CapacityPolicy::AllowBoundary && p <= boundary_capacity(n)) {
      status = CapacityStatus::AtBoundary;
    } else if (options.capacity == CapacityPolicy::Unchecked) {
      status = p <= boundary_capacity(n) ? CapacityStatus::AtBoundary : CapacityStatus::OverCapacity;
    } else {
      throw Error(ErrorCode::CapacityExceeded, std::to_string(p) + " patterns exceed the capacity of " +
                                                   std::to_string(n) + " neurons (0.138 N = " +
                                                   std::to_string(kCapacityRatio * static_cast<double>(n)) + ")");
    }
  }

  HopfieldModel model;
  model.config_ = config;
  model.capacity_status_ = status;
  model.couplings_.assign(n * n, 0);
  for (const auto& sp : patterns) {
    auto x = sp.pattern.states();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) model.couplings_[i * n + j] += x[i] * x[j];
      }
    }
  }
  model.weights_.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    model.weights_[k] = static_cast<double>(model.couplings_[k]) / static_cast<double>(n);
  }
  model.bias_.assign(n, 0.0);
  model.stored_ = std::move(patterns);
  return model;
}

HopfieldModel HopfieldModel::with_bias(std::vector<double> bias) const {
  if (bias.size() != size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "bias has " + std::to_string(bias.size()) + " entries, network has " + std::to_string(size()));
  }
  HopfieldModel copy = *this;
  copy.has_bias_ = false;
  for (double b : bias) {
    if (!std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "bias must be finite");
    if (b != 0.0) copy.has_bias_ = true;
  }
  copy.bias_ = std::move(bias);
  return copy;
}

std::optional<std::string> HopfieldModel::label_of(const BipolarPattern& state) const {
  for (const auto& sp : stored_) {
    if (sp.pattern == state) return sp.label;
  }
  return std::nullopt;
}

std::int64_t HopfieldModel::scaled_field(std::size_t i, const BipolarPattern& state) const {
  const std::size_t n = size();
  const std::int32_t* row = couplings_.data() + i * n;
  auto x = state.states();
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < n; ++j) sum += row[j] * x[j];
  return sum;
}

double energy(const HopfieldModel& model, const BipolarPattern& state) {
  const std::size_t n = model.size();
  if (state.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(state.size()) + " neurons, network has " + std::to_string(n));
  }
  auto x = state.states();
  std::int64_t quadratic = 0;
  for (std::size_t i = 0; i < n; ++i) quadratic += x[i] * model.scaled_field(i, state);
  double e = -0.5 * static_cast<double>(quadratic) / static_cast<double>(n);
  if (model.has_bias()) {
    auto bias = model.bias();
    for (std::size_t i = 0; i < n; ++i) e -= bias[i] * x[i];
  }
  return e;
}

ConvergenceResult converge(const HopfieldModel& model, BipolarPattern initial, std::size_t max_passes,
                           const UpdateObserver& observer) {
  const std::size_t n = model.size();
  if (initial.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "probe has " + std::to_string(initial.size()) + " neurons, network has " + std::to_string(n));
  }
  if (max_passes < 1) throw Error(ErrorCode::InvalidArgument, "max_passes must be at least 1");

  ConvergenceResult result;
  BipolarPattern& x = initial;
  auto bias = model.bias();
  const double inv_n = 1.0 / static_cast<double>(n);
  bool converged = false;

  while (result.passes_used < max_passes) {
    ++result.passes_used;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t scaled = model.scaled_field(i, x);
      int sign;
      if (model.has_bias()) {
        double h = static_cast<double>(scaled) * inv_n + bias[i];
        sign = h > 0.0 ? 1 : (h < 0.0 ? -1 : 0);
      } else {
        sign = scaled > 0 ? 1 : (scaled < 0 ? -1 : 0);
      }
      if (sign != 0 && sign != x[i]) {
        x.flip(i);
        ++result.flips;
        changed = true;
        if (observer) observer(i, x);
      }
    }
    if (!changed) {
      converged = true;
      break;
    }
  }

  result.final_energy = energy(model, x);
  if (!converged) {
    result.outcome = Outcome::NonConvergent;
  } else if (auto label = model.label_of(x)) {
    result.outcome = Outcome::Retrieved;
    result.label = std::move(label);
  } else {
    result.outcome = Outcome::Spurious;
  }
  result.final_state = std::move(initial);
  return result;
}

}  // namespace hopcall
