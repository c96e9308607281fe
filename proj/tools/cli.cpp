#include "cli.hpp"

#include <glob.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopcall/audio_io.hpp"
#include "hopcall/bench.hpp"
#include "hopcall/bout.hpp"
#include "hopcall/error.hpp"
#include "hopcall/fixtures.hpp"
#include "hopcall/metrics.hpp"
#include "hopcall/model_file.hpp"
#include "hopcall/spectral.hpp"

namespace hopcall::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::SchemaError, where + ": '" + text + "' is not a valid number");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& where) {
  std::string v = lower(text);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw Error(ErrorCode::SchemaError, where + ": '" + text + "' is not a boolean");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Flag values that were actually given on the command line.
struct Overrides {
  std::optional<double> band_low_hz, band_high_hz, threshold, segment_length_s, overlap;
  std::optional<std::size_t> n_neurons, fft_length, max_passes, jobs;
  std::optional<std::string> window, output, model;
  std::vector<std::string> exemplars;
  std::vector<std::string> inputs;
  bool strict_capacity = false;
  std::string config_path;

  void apply(RunConfig& c) const {
    if (band_low_hz) c.band_low_hz = *band_low_hz;
    if (band_high_hz) c.band_high_hz = *band_high_hz;
    if (threshold) c.threshold = *threshold;
    if (segment_length_s) c.segment_length_s = *segment_length_s;
    if (overlap) c.overlap = *overlap;
    if (n_neurons) c.n_neurons = *n_neurons;
    if (fft_length) c.fft_length = *fft_length;
    if (max_passes) c.max_passes = *max_passes;
    if (jobs) c.jobs = *jobs;
    if (window) c.window = *window;
    if (output) c.output = *output;
    if (model) c.model = *model;
    if (strict_capacity) c.strict_capacity = true;
    if (!exemplars.empty()) {
      c.exemplars.clear();
      for (const auto& e : exemplars) c.exemplars.push_back(parse_exemplar(e));
    }
    if (!inputs.empty()) c.inputs = inputs;
  }
};

RunConfig resolve(const Overrides& o) {
  RunConfig config;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + o.config_path);
    apply_config(in, o.config_path, config);
  }
  o.apply(config);
  config.validate();
  return config;
}

void add_config_option(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value settings file (flags take precedence)");
}

void add_encoder_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--neurons", o.n_neurons, "number of neurons N [14]");
  cmd->add_option("--band-low", o.band_low_hz, "lower band edge in Hz [0]");
  cmd->add_option("--band-high", o.band_high_hz, "upper band edge in Hz [1300]");
  cmd->add_option("--threshold", o.threshold, "normalised peak power threshold [0.1]");
}

void add_spectral_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--fft-length", o.fft_length, "FFT frame length, power of two [1024]");
  cmd->add_option("--overlap", o.overlap, "fraction of a frame shared with the next [0.5]");
  cmd->add_option("--window", o.window, "hamming | hann | rectangular [hamming]");
}

BoutRules parse_rules(const std::vector<std::string>& specs, std::optional<double> noncall_max,
                      std::optional<double> segment_length) {
  BoutRules rules;
  if (!specs.empty()) {
    rules.calls.clear();
    for (const auto& spec : specs) {
      // label:min_consecutive:separation_s
      auto a = spec.find(':');
      auto b = a == std::string::npos ? a : spec.find(':', a + 1);
      if (b == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "--rule expects label:min_consecutive:separation_s, got '" + spec + "'");
      }
      CallRule r;
      r.label = lower(spec.substr(0, a));
      r.min_consecutive = parse_number<std::size_t>(spec.substr(a + 1, b - a - 1), "--rule " + spec);
      r.separation_s = parse_number<double>(spec.substr(b + 1), "--rule " + spec);
      rules.calls.push_back(std::move(r));
    }
  }
  if (noncall_max) rules.noncall_max_s = *noncall_max;
  if (segment_length) rules.segment_length_s = *segment_length;
  rules.validate();
  return rules;
}

std::vector<Bout> read_bouts_or_classifications(const std::string& path, const BoutRules& rules) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  in.clear();
  in.seekg(0);
  try {
    if (header == kClassificationHeader) return extract_bouts_by_source(read_classifications(in), rules);
    return read_bouts(in, rules);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

// --- subcommands ---------------------------------------------------------

int cmd_store(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.exemplars.empty()) {
    err << "error: no exemplars given (use --exemplar label=path)\n";
    return kExitInput;
  }
  if (config.output.empty()) {
    err << "error: no output model path (use -o)\n";
    return kExitInput;
  }
  std::vector<Exemplar> exemplars;
  for (const auto& [label, path] : config.exemplars) exemplars.push_back({read_wav(path), label});

  const EncoderConfig encoder = config.encoder();
  const SpectralParams spectral = config.spectral();
  StoreOptions options{config.strict_capacity ? CapacityPolicy::Strict : CapacityPolicy::AllowBoundary};

  auto t0 = Clock::now();
  HopfieldModel model = store_from_audio(exemplars, encoder, spectral, options);
  double pipeline_ms = elapsed_ms(t0);
  t0 = Clock::now();
  (void)HopfieldModel::store(model.stored(), encoder, options);
  double hebbian_ms = elapsed_ms(t0);

  save_model(config.output, model, spectral);

  out << "neurons: " << model.size() << "\n";
  out << "patterns: " << model.stored().size() << " (";
  for (std::size_t k = 0; k < model.stored().size(); ++k) {
    out << (k ? ", " : "") << model.stored()[k].label << " " << model.stored()[k].pattern.to_string();
  }
  out << ")\n";
  out << "capacity: " << to_string(model.capacity_status()) << " (floor(0.138 N) = " << capacity_bound(model.size())
      << ")\n";
  if (model.capacity_status() == CapacityStatus::AtBoundary) {
    err << "warning: " << model.stored().size() << " patterns exceed floor(0.138 * " << model.size()
        << ") = " << capacity_bound(model.size()) << "; stored at the capacity boundary\n";
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "store time: %.3f ms (Hebbian storage %.3f ms)\n", pipeline_ms, hebbian_ms);
  out << buf;
  out << "wrote " << config.output << "\n";
  return kExitOk;
}

int cmd_classify(const RunConfig& config, const Overrides& o, std::ostream& out, std::ostream& err) {
  if (config.model.empty()) {
    err << "error: no model given (use -m)\n";
    return kExitInput;
  }
  std::vector<std::string> files = expand_inputs(config.inputs);
  if (files.empty()) {
    err << "error: no input files\n";
    return kExitInput;
  }
  ModelFile mf = load_model(config.model);
  ClassifierParams params;
  params.spectral = mf.spectral;
  if (o.fft_length) params.spectral.fft_length = *o.fft_length;
  if (o.overlap) params.spectral.overlap = *o.overlap;
  if (o.window) params.spectral.window = parse_window(*o.window);
  params.spectral.validate();
  params.segment_length_s = config.segment_length_s;
  params.max_passes = config.max_passes;

  struct FileResult {
    std::vector<SegmentClassification> rows;
    std::string error;
    double decode_s = 0.0;
    double classify_s = 0.0;
  };
  std::vector<FileResult> results(files.size());
  const std::size_t workers = std::min(worker_count(config.jobs), files.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t f = w; f < files.size(); f += workers) {
          FileResult& r = results[f];
          try {
            auto t0 = Clock::now();
            AudioBuffer audio = read_wav(files[f]);
            r.decode_s = elapsed_ms(t0) / 1000.0;
            t0 = Clock::now();
            r.rows = classify_file(mf.model, audio, params, std::filesystem::path(files[f]).filename().string());
            r.classify_s = elapsed_ms(t0) / 1000.0;
          } catch (const std::exception& e) {
            r.error = e.what();
          }
        }
      });
    }
  }

  std::vector<SegmentClassification> all;
  std::size_t failed = 0;
  double classify_s = 0.0, decode_s = 0.0;
  for (std::size_t f = 0; f < files.size(); ++f) {
    if (!results[f].error.empty()) {
      err << "error: " << files[f] << ": " << results[f].error << "\n";
      ++failed;
      continue;
    }
    classify_s += results[f].classify_s;
    decode_s += results[f].decode_s;
    all.insert(all.end(), results[f].rows.begin(), results[f].rows.end());
  }

  std::string csv_text = format_classifications(all);
  if (config.output.empty() || config.output == "-") {
    out << csv_text;
  } else {
    write_text(config.output, csv_text);
    char buf[200];
    std::snprintf(buf, sizeof buf, "classified %zu segments from %zu file(s): %.1f segments/s (decode %.3f s)\n",
                  all.size(), files.size() - failed, classify_s > 0 ? all.size() / classify_s : 0.0, decode_s);
    out << buf << "wrote " << config.output << "\n";
  }
  return failed ? kExitInput : kExitOk;
}

}  // namespace

EncoderConfig RunConfig::encoder() const {
  return EncoderConfig{n_neurons, FrequencyBand{band_low_hz, band_high_hz}, threshold};
}

SpectralParams RunConfig::spectral() const {
  SpectralParams p;
  p.fft_length = fft_length;
  p.overlap = overlap;
  p.window = parse_window(window);
  return p;
}

void RunConfig::validate() const {
  encoder().validate();
  spectral().validate();
  if (!(segment_length_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "segment_length_s must be positive");
  if (max_passes < 1) throw Error(ErrorCode::InvalidArgument, "max_passes must be at least 1");
}

std::pair<std::string, std::string> parse_exemplar(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw Error(ErrorCode::InvalidArgument, "exemplar must be label=path, got '" + spec + "'");
  }
  return {lower(trim(spec.substr(0, eq))), trim(spec.substr(eq + 1))};
}

void apply_config(std::istream& in, const std::string& name, RunConfig& c) {
  std::string line;
  std::size_t line_no = 0;
  bool exemplars_reset = false, inputs_reset = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = name + ":" + std::to_string(line_no);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SchemaError, where + ": expected key = value");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (value.empty()) throw Error(ErrorCode::SchemaError, where + ": empty value for '" + key + "'");

    if (key == "band_low_hz") c.band_low_hz = parse_number<double>(value, where);
    else if (key == "band_high_hz") c.band_high_hz = parse_number<double>(value, where);
    else if (key == "threshold") c.threshold = parse_number<double>(value, where);
    else if (key == "n_neurons") c.n_neurons = parse_number<std::size_t>(value, where);
    else if (key == "segment_length_s") c.segment_length_s = parse_number<double>(value, where);
    else if (key == "fft_length") c.fft_length = parse_number<std::size_t>(value, where);
    else if (key == "overlap") c.overlap = parse_number<double>(value, where);
    else if (key == "window") c.window = lower(value);
    else if (key == "max_passes") c.max_passes = parse_number<std::size_t>(value, where);
    else if (key == "jobs") c.jobs = parse_number<std::size_t>(value, where);
    else if (key == "strict_capacity") c.strict_capacity = parse_bool(value, where);
    else if (key == "output") c.output = value;
    else if (key == "model") c.model = value;
    else if (key == "exemplar") {
      if (!exemplars_reset) c.exemplars.clear();
      exemplars_reset = true;
      try {
        c.exemplars.push_back(parse_exemplar(value));
      } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, where + ": " + e.what());
      }
    } else if (key == "input") {
      if (!inputs_reset) c.inputs.clear();
      inputs_reset = true;
      c.inputs.push_back(value);
    } else {
      throw Error(ErrorCode::SchemaError, where + ": unknown key '" + key + "'");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, name + ": " + e.what());
  }
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& patterns) {
  std::vector<std::string> files;
  for (const auto& pattern : patterns) {
    if (pattern.find_first_of("*?[") == std::string::npos) {
      files.push_back(pattern);
      continue;
    }
    glob_t g{};
    if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
      std::vector<std::string> matches(g.gl_pathv, g.gl_pathv + g.gl_pathc);
      std::sort(matches.begin(), matches.end());
      files.insert(files.end(), matches.begin(), matches.end());
    }
    ::globfree(&g);
  }
  return files;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hopfield associative-memory detector for animal calls in long recordings", "hopcall"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "print version information as JSON");

  Overrides o;

  CLI::App* store = app.add_subcommand("store", "store exemplar recordings in a new model file");
  add_config_option(store, o);
  store->add_option("--exemplar", o.exemplars, "label=path.wav (repeatable, one per stored sound)");
  add_encoder_options(store, o);
  add_spectral_options(store, o);
  store->add_flag("--strict-capacity", o.strict_capacity, "reject p > floor(0.138 N) instead of warning at the boundary");
  store->add_option("-o,--output", o.output, "model file to write");

  CLI::App* classify = app.add_subcommand("classify", "label every whole segment of each recording");
  add_config_option(classify, o);
  classify->add_option("-m,--model", o.model, "model file");
  classify->add_option("inputs", o.inputs, "WAV files or quoted glob patterns");
  classify->add_option("-o,--output", o.output, "classification CSV to write ('-' for stdout)");
  classify->add_option("--segment-length", o.segment_length_s, "segment length in seconds [1]");
  classify->add_option("--max-passes", o.max_passes, "update passes before giving up [100]");
  classify->add_option("-j,--jobs", o.jobs, "worker threads across files [hardware threads]");
  add_spectral_options(classify, o);

  std::string bouts_in, bouts_out;
  std::vector<std::string> rule_specs;
  std::optional<double> noncall_max;
  CLI::App* bouts = app.add_subcommand("bouts", "aggregate per-segment labels into call and non-call bouts");
  bouts->add_option("-i,--input", bouts_in, "classification CSV")->required();
  bouts->add_option("-o,--output", bouts_out, "bout CSV to write ('-' or omitted for stdout)");
  bouts->add_option("--rule", rule_specs, "label:min_consecutive:separation_s (repeatable) [grumble:2:1 alarm:3:5]");
  bouts->add_option("--noncall-max", noncall_max, "longest non-call bout in seconds [60]");
  bouts->add_option("--segment-length", o.segment_length_s, "segment length in seconds [1]");

  std::string predicted_path, labels_path, json_path;
  double min_overlap = kDefaultMinOverlapS;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score predicted bouts against labelled bouts");
  evaluate->add_option("-p,--predicted", predicted_path, "bout CSV or classification CSV")->required();
  evaluate->add_option("-l,--labels", labels_path, "labelled bout CSV")->required();
  evaluate->add_option("--json", json_path, "also write the report as JSON");
  evaluate->add_option("--min-overlap", min_overlap, "overlap in seconds needed for a match [1]");
  evaluate->add_option("--rule", rule_specs, "label:min_consecutive:separation_s (repeatable)");
  evaluate->add_option("--noncall-max", noncall_max, "longest non-call bout in seconds [60]");

  std::string spec_in, spec_out;
  double dynamic_range = 80.0;
  CLI::App* spectrogram = app.add_subcommand("spectrogram", "render a recording's spectrogram as PNG");
  spectrogram->add_option("input", spec_in, "WAV file")->required();
  spectrogram->add_option("output", spec_out, "PNG file")->required();
  spectrogram->add_option("--dynamic-range", dynamic_range, "dB span of the colour scale [80]");
  add_spectral_options(spectrogram, o);

  std::string bench_wav;
  double synthetic_minutes = 10.0;
  std::size_t store_repeats = 200, classify_repeats = 1;
  CLI::App* bench = app.add_subcommand("bench", "time storage and single-threaded classification");
  add_config_option(bench, o);
  bench->add_option("-m,--model", o.model, "model file")->required();
  bench->add_option("input", bench_wav, "WAV file (default: synthetic corpus held in memory)");
  bench->add_option("--synthetic-minutes", synthetic_minutes, "length of the synthetic corpus [10]");
  bench->add_option("--exemplar", o.exemplars, "label=path.wav; also time the full store pipeline");
  bench->add_option("--store-repeats", store_repeats, "store timing repetitions [200]");
  bench->add_option("--repeats", classify_repeats, "classification passes, fastest reported [1]");
  bench->add_option("--segment-length", o.segment_length_s, "segment length in seconds [1]");
  bench->add_option("-o,--output", o.output, "timing JSON to write (default stdout)");

  std::string synth_dir;
  std::string synth_kind = "calls";
  double synth_minutes = 10.0;
  std::uint64_t synth_seed = 1;
  CLI::App* synth = app.add_subcommand("synth", "write a synthetic labelled corpus and exemplar set");
  synth->add_option("dir", synth_dir, "output directory")->required();
  synth->add_option("--kind", synth_kind, "calls | noisy [calls]")->check(CLI::IsMember({"calls", "noisy"}));
  synth->add_option("--minutes", synth_minutes, "corpus length [10]");
  synth->add_option("--seed", synth_seed, "random seed [1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (show_version) {
      nlohmann::ordered_json v{{"name", "hopcall"}, {"version", kVersion}, {"model_format_version", kModelFormatVersion}};
      out << v.dump() << "\n";
      return kExitOk;
    }
    if (*store) return cmd_store(resolve(o), out, err);
    if (*classify) return cmd_classify(resolve(o), o, out, err);

    if (*bouts) {
      BoutRules rules = parse_rules(rule_specs, noncall_max, o.segment_length_s);
      std::ifstream in(bouts_in, std::ios::binary);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + bouts_in);
      std::vector<Bout> result = extract_bouts_by_source(read_classifications(in), rules);
      std::string text = format_bouts(result);
      if (bouts_out.empty() || bouts_out == "-") {
        out << text;
      } else {
        write_text(bouts_out, text);
        out << "wrote " << result.size() << " bouts to " << bouts_out << "\n";
      }
      return kExitOk;
    }

    if (*evaluate) {
      BoutRules rules = parse_rules(rule_specs, noncall_max, std::nullopt);
      std::vector<Bout> predicted = read_bouts_or_classifications(predicted_path, rules);
      std::vector<Bout> labelled = load_labels(labels_path, rules);
      ClassificationReport r = report(match_bouts_by_source(predicted, labelled, min_overlap));
      out << format_report_table(r);
      if (!json_path.empty()) write_text(json_path, format_report_json(r));
      return kExitOk;
    }

    if (*spectrogram) {
      RunConfig c;
      o.apply(c);
      c.validate();
      SpectrogramOptions options;
      options.spectral = c.spectral();
      options.dynamic_range_db = dynamic_range;
      spectrogram_image(read_wav(spec_in), options, spec_out);
      out << "wrote " << spec_out << "\n";
      return kExitOk;
    }

    if (*bench) {
      RunConfig c = resolve(o);
      ModelFile mf = load_model(c.model);
      BenchOptions options;
      options.classifier.spectral = mf.spectral;
      options.classifier.segment_length_s = c.segment_length_s;
      options.classifier.max_passes = c.max_passes;
      options.store_repeats = store_repeats;
      options.classify_repeats = classify_repeats;

      AudioBuffer audio;
      std::optional<double> decode_s;
      if (!bench_wav.empty()) {
        auto t0 = Clock::now();
        audio = read_wav(bench_wav);
        decode_s = elapsed_ms(t0) / 1000.0;
      } else {
        audio = fixtures::generate_corpus(fixtures::call_corpus(synthetic_minutes * 60.0, 1)).audio;
      }
      std::vector<Exemplar> exemplars;
      for (const auto& [label, path] : c.exemplars) exemplars.push_back({read_wav(path), label});

      BenchResult result = run_bench(mf.model, audio, options, exemplars.empty() ? nullptr : &exemplars);
      result.decode_seconds = decode_s;
      std::string text = format_bench_json(result);
      if (c.output.empty() || c.output == "-") {
        out << text;
      } else {
        write_text(c.output, text);
        out << "wrote " << c.output << "\n";
      }
      return kExitOk;
    }

    if (*synth) {
      namespace fs = std::filesystem;
      fs::create_directories(synth_dir);
      const double seconds = synth_minutes * 60.0;
      fixtures::CorpusSpec spec = synth_kind == "noisy" ? fixtures::noise_overlap_corpus(seconds, synth_seed)
                                                       : fixtures::call_corpus(seconds, synth_seed);
      fixtures::CorpusPaths paths = fixtures::write_corpus(fixtures::generate_corpus(spec), synth_dir);
      out << "wrote " << paths.wav.string() << "\n" << "wrote " << paths.labels.string() << "\n";
      for (const auto& e : fixtures::model2_exemplars()) {
        fs::path p = fs::path(synth_dir) / (e.label + ".wav");
        write_wav(e.audio, p);
        out << "wrote " << p.string() << "\n";
      }
      return kExitOk;
    }

    out << app.help();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hopcall::cli
