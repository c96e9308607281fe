#include "hopcall/model_file.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "hopcall/error.hpp"

namespace hopcall {

using nlohmann::json;

std::string serialize_model(const HopfieldModel& model, const SpectralParams& spectral) {
  const EncoderConfig& cfg = model.encoder_config();
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["encoder_config"] = {
      {"n_neurons", cfg.n_neurons},
      {"band_low_hz", cfg.band.low_hz},
      {"band_high_hz", cfg.band.high_hz},
      {"threshold", cfg.threshold},
  };
  doc["spectral_params"] = {
      {"fft_length", spectral.fft_length},
      {"window", std::string(to_string(spectral.window))},
      {"overlap", spectral.overlap},
  };
  json patterns = json::array();
  for (const auto& sp : model.stored()) {
    json states = json::array();
    for (auto v : sp.pattern.states()) states.push_back(static_cast<int>(v));
    patterns.push_back({{"label", sp.label}, {"states", std::move(states)}});
  }
  doc["patterns"] = std::move(patterns);
  json weights = json::array();
  for (double w : model.weights()) weights.push_back(w);
  doc["weights"] = std::move(weights);
  json bias = json::array();
  for (double b : model.bias()) bias.push_back(b);
  doc["bias"] = std::move(bias);
  return doc.dump(2) + "\n";
}

namespace {

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::SchemaError, std::string("missing key '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("bad value for '") + key + "': " + e.what());
  }
}

const json& array_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw Error(ErrorCode::SchemaError, std::string("'") + key + "' must be an array");
  }
  return obj.at(key);
}

}  // namespace

ModelFile parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "model document must be a JSON object");
  int version = field<int>(doc, "format_version");
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::SchemaError, "unsupported format_version " + std::to_string(version));
  }

  const json& ec = doc.contains("encoder_config") ? doc.at("encoder_config") : json();
  EncoderConfig cfg;
  cfg.n_neurons = field<std::size_t>(ec, "n_neurons");
  cfg.band.low_hz = field<double>(ec, "band_low_hz");
  cfg.band.high_hz = field<double>(ec, "band_high_hz");
  cfg.threshold = field<double>(ec, "threshold");
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, std::string("encoder_config: ") + e.what());
  }

  const json& sc = doc.contains("spectral_params") ? doc.at("spectral_params") : json();
  SpectralParams spectral;
  spectral.fft_length = field<std::size_t>(sc, "fft_length");
  spectral.overlap = field<double>(sc, "overlap");
  try {
    spectral.window = parse_window(field<std::string>(sc, "window"));
    spectral.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, std::string("spectral_params: ") + e.what());
  }

  std::vector<StoredPattern> patterns;
  for (const json& entry : array_field(doc, "patterns")) {
    StoredPattern sp;
    sp.label = field<std::string>(entry, "label");
    std::vector<std::int8_t> states;
    for (const json& v : array_field(entry, "states")) {
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        throw Error(ErrorCode::SchemaError, "pattern '" + sp.label + "' has a state other than -1/+1");
      }
      states.push_back(static_cast<std::int8_t>(v.get<int>()));
    }
    sp.pattern = BipolarPattern(std::move(states));
    patterns.push_back(std::move(sp));
  }

  auto read_reals = [&](const char* key) {
    std::vector<double> out;
    for (const json& v : array_field(doc, key)) {
      if (!v.is_number()) throw Error(ErrorCode::SchemaError, std::string("'") + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };
  std::vector<double> weights = read_reals("weights");
  std::vector<double> bias = read_reals("bias");

  const std::size_t n = cfg.n_neurons;
  if (weights.size() != n * n) {
    throw Error(ErrorCode::SchemaError, "weights must hold " + std::to_string(n * n) + " entries");
  }

  HopfieldModel model = [&] {
    try {
      return HopfieldModel::store(std::move(patterns), cfg, StoreOptions{CapacityPolicy::Unchecked});
    } catch (const Error& e) {
      throw Error(ErrorCode::InvariantViolation, std::string("stored patterns: ") + e.what());
    }
  }();
  auto expected = model.weights();
  for (std::size_t k = 0; k < n * n; ++k) {
    if (weights[k] != expected[k]) {
      throw Error(ErrorCode::InvariantViolation, "weight (" + std::to_string(k / n) + ", " + std::to_string(k % n) +
                                                     ") does not match the Hebbian matrix of the stored patterns");
    }
  }
  try {
    model = model.with_bias(std::move(bias));
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, std::string("bias: ") + e.what());
  }
  return ModelFile{std::move(model), spectral};
}

void save_model(const std::filesystem::path& path, const HopfieldModel& model, const SpectralParams& spectral) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << serialize_model(model, spectral);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_model(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace hopcall
