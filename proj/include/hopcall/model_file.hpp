#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hopcall/hopfield.hpp"
#include "hopcall/spectral.hpp"

namespace hopcall {

inline constexpr int kModelFormatVersion = 1;

/// A stored network together with the spectral settings its exemplars were
/// analysed with.
struct ModelFile {
  HopfieldModel model;
  SpectralParams spectral;
};

/// JSON document: format_version, encoder_config, spectral_params, patterns
/// (label + states), weights (row-major, N*N), bias. Keys are emitted in sorted
/// order and numbers in shortest round-trip form, so save -> load -> save is
/// byte-identical.
std::string serialize_model(const HopfieldModel& model, const SpectralParams& spectral);

/// Rebuilds the network from the stored patterns and rejects the document
/// (InvariantViolation) unless its weight matrix is exactly the Hebbian
/// matrix of those patterns. Structural problems raise SchemaError.
ModelFile parse_model(std::string_view text);

void save_model(const std::filesystem::path& path, const HopfieldModel& model, const SpectralParams& spectral);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace hopcall
