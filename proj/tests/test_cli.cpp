#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "hopcall/audio_io.hpp"
#include "hopcall/bout.hpp"
#include "hopcall/fixtures.hpp"
#include "hopcall/model_file.hpp"

namespace fs = std::filesystem;
using namespace hopcall;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hopcall");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// One synthetic workspace shared by the cases below.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / "hopcall_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    REQUIRE(invoke({"synth", dir.string(), "--minutes", "1", "--seed", "4"}).code == 0);
    REQUIRE(invoke({"store", "--exemplar", "grumble=" + s("grumble.wav"), "--exemplar", "alarm=" + s("alarm.wav"), "-o",
                 s("m1.json")}).code == 0);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string s(const std::string& name) const { return (dir / name).string(); }
};

Workspace& ws() {
  static Workspace w;
  return w;
}

}  // namespace

TEST_CASE("version and help") {
  Run v = invoke({"--version"});
  CHECK(v.code == 0);
  auto doc = nlohmann::json::parse(v.out);
  CHECK(doc["name"] == "hopcall");
  CHECK(doc["version"] == cli::kVersion);
  CHECK(doc["model_format_version"] == kModelFormatVersion);

  Run h = invoke({"--help"});
  CHECK(h.code == 0);
  for (const char* sub : {"store", "classify", "bouts", "evaluate", "spectrogram", "bench"})
    CHECK(h.out.find(sub) != std::string::npos);
  Run sh = invoke({"store", "--help"});
  CHECK(sh.code == 0);
  CHECK(sh.out.find("--threshold") != std::string::npos);
  CHECK(sh.out.find("--neurons") != std::string::npos);

  CHECK(invoke({"--no-such-flag"}).code == cli::kExitInput);
  CHECK(invoke({"store", "--neurons", "many"}).code == cli::kExitInput);
}

TEST_CASE("store reports the model shape") {
  auto& w = ws();
  Run two = invoke({"store", "--exemplar", "grumble=" + w.s("grumble.wav"), "--exemplar", "alarm=" + w.s("alarm.wav"),
                 "--neurons", "14", "--band-low", "0", "--band-high", "1300", "--threshold", "0.1", "-o", w.s("a.json")});
  CHECK(two.code == 0);
  CHECK(two.out.find("neurons: 14") != std::string::npos);
  CHECK(two.out.find("patterns: 2") != std::string::npos);
  CHECK(two.out.find("at-boundary") != std::string::npos);
  CHECK(two.out.find("store time:") != std::string::npos);
  CHECK(load_model(w.s("a.json")).model.size() == 14);

  Run three = invoke({"store", "--exemplar", "grumble=" + w.s("grumble.wav"), "--exemplar", "alarm=" + w.s("alarm.wav"),
                   "--exemplar", "noise=" + w.s("noise.wav"), "--neurons", "34", "-o", w.s("b.json")});
  CHECK(three.code == 0);
  CHECK(three.out.find("within-bound") != std::string::npos);
  CHECK(load_model(w.s("b.json")).model.stored().size() == 3);

  Run over = invoke({"store", "--exemplar", "grumble=" + w.s("grumble.wav"), "--exemplar", "alarm=" + w.s("alarm.wav"),
                  "--exemplar", "noise=" + w.s("noise.wav"), "-o", w.s("c.json")});
  CHECK(over.code == cli::kExitInput);
  CHECK(over.err.find("CapacityExceeded") != std::string::npos);
  CHECK_FALSE(fs::exists(w.s("c.json")));

  Run strict = invoke({"store", "--exemplar", "grumble=" + w.s("grumble.wav"), "--exemplar", "alarm=" + w.s("alarm.wav"),
                    "--strict-capacity", "-o", w.s("d.json")});
  CHECK(strict.code == cli::kExitInput);

  CHECK(invoke({"store", "--exemplar", "nolabel", "-o", w.s("e.json")}).code == cli::kExitInput);
  CHECK(invoke({"store", "--exemplar", "x=" + w.s("missing.wav"), "-o", w.s("e.json")}).code == cli::kExitInput);
}

TEST_CASE("classify emits one row per second") {
  auto& w = ws();
  Run r = invoke({"classify", "-m", w.s("m1.json"), w.s("corpus.wav"), "-o", w.s("c.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("segments/s") != std::string::npos);
  std::string csv = slurp(w.s("c.csv"));
  CHECK(count_lines(csv) == 61);
  CHECK(csv.rfind("source_file,segment_index,start_time_s,label\ncorpus.wav,0,0.000,", 0) == 0);

  Run stdout_run = invoke({"classify", "-m", w.s("m1.json"), w.s("corpus.wav")});
  CHECK(stdout_run.out == csv);
}

TEST_CASE("empty input set") {
  auto& w = ws();
  Run r = invoke({"classify", "-m", w.s("m1.json"), w.s("nothing-*.wav")});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("no input files") != std::string::npos);
}

TEST_CASE("multi-file classification is deterministic and survives bad files") {
  auto& w = ws();
  fs::create_directories(w.dir / "many");
  for (int k = 0; k < 3; ++k) {
    auto corpus = fixtures::generate_corpus(fixtures::call_corpus(30, 10 + k, "f" + std::to_string(k) + ".wav"));
    fixtures::write_corpus(corpus, w.dir / "many");
  }
  std::string glob = (w.dir / "many" / "*.wav").string();
  REQUIRE(invoke({"classify", "-m", w.s("m1.json"), glob, "-j", "3", "-o", w.s("r1.csv")}).code == 0);
  REQUIRE(invoke({"classify", "-m", w.s("m1.json"), glob, "-j", "1", "-o", w.s("r2.csv")}).code == 0);
  REQUIRE(invoke({"classify", "-m", w.s("m1.json"), glob, "-o", w.s("r3.csv")}).code == 0);
  std::string first = slurp(w.s("r1.csv"));
  CHECK(first == slurp(w.s("r2.csv")));
  CHECK(first == slurp(w.s("r3.csv")));
  CHECK(count_lines(first) == 91);
  CHECK(first.find("f0.wav,29,") < first.find("f1.wav,0,"));

  write_file(w.dir / "many" / "broken.wav", "RIFF....WAVE");
  Run partial = invoke({"classify", "-m", w.s("m1.json"), glob, "-o", w.s("r4.csv")});
  CHECK(partial.code == cli::kExitInput);
  CHECK(partial.err.find("broken.wav") != std::string::npos);
  CHECK(slurp(w.s("r4.csv")) == first);
  fs::remove(w.dir / "many" / "broken.wav");
}

TEST_CASE("bouts from a replayed detection table") {
  auto& w = ws();
  const std::string codes = "UUGGGUUGGGUUUUU";
  std::string csv = "source_file,segment_index,start_time_s,label\n";
  for (std::size_t k = 0; k < codes.size(); ++k)
    csv += "t.wav," + std::to_string(280 + k) + "," + std::to_string(280 + k) + ".000," +
           (codes[k] == 'G' ? "grumble" : "unid") + "\n";
  write_file(w.dir / "table.csv", csv);
  Run r = invoke({"bouts", "-i", w.s("table.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("t.wav,grumble,282.000,285.000\n") != std::string::npos);
  CHECK(r.out.find("t.wav,grumble,287.000,290.000\n") != std::string::npos);

  Run custom = invoke({"bouts", "-i", w.s("table.csv"), "--rule", "grumble:3:4"});
  CHECK(custom.out.find("t.wav,grumble,282.000,290.000\n") != std::string::npos);
  CHECK(invoke({"bouts", "-i", w.s("table.csv"), "--rule", "grumble"}).code == cli::kExitInput);
}

TEST_CASE("evaluate against the labels") {
  auto& w = ws();
  Run self = invoke({"evaluate", "-p", w.s("corpus_labels.csv"), "-l", w.s("corpus_labels.csv"), "--json", w.s("r.json")});
  REQUIRE(self.code == 0);
  CHECK(self.out.find("overall accuracy (micro precision): 1.00") != std::string::npos);
  auto doc = nlohmann::json::parse(slurp(w.s("r.json")));
  CHECK(doc["overall_accuracy"] == 1.0);

  REQUIRE(invoke({"classify", "-m", w.s("m1.json"), w.s("corpus.wav"), "-o", w.s("ev.csv")}).code == 0);
  REQUIRE(invoke({"bouts", "-i", w.s("ev.csv"), "-o", w.s("ev_bouts.csv")}).code == 0);
  Run via_bouts = invoke({"evaluate", "-p", w.s("ev_bouts.csv"), "-l", w.s("corpus_labels.csv")});
  Run via_rows = invoke({"evaluate", "-p", w.s("ev.csv"), "-l", w.s("corpus_labels.csv")});
  CHECK(via_bouts.code == 0);
  CHECK(via_bouts.out == via_rows.out);
  CHECK(invoke({"evaluate", "-p", w.s("missing.csv"), "-l", w.s("corpus_labels.csv")}).code == cli::kExitInput);
}

TEST_CASE("spectrogram and bench") {
  auto& w = ws();
  Run s = invoke({"spectrogram", w.s("alarm.wav"), w.s("alarm.png")});
  CHECK(s.code == 0);
  CHECK(fs::file_size(w.s("alarm.png")) > 100);

  Run b = invoke({"bench", "-m", w.s("m1.json"), "--synthetic-minutes", "1", "--exemplar", "grumble=" + w.s("grumble.wav"),
               "--exemplar", "alarm=" + w.s("alarm.wav"), "--store-repeats", "5"});
  REQUIRE(b.code == 0);
  auto doc = nlohmann::json::parse(b.out);
  CHECK(doc["segments"] == 60);
  CHECK(doc["segments_per_second"].get<double>() > 0);
  CHECK(doc["store_ms"].get<double>() >= 0);
  CHECK(doc["store_pipeline_ms"].is_number());

  Run f = invoke({"bench", "-m", w.s("m1.json"), w.s("corpus.wav")});
  REQUIRE(f.code == 0);
  CHECK(nlohmann::json::parse(f.out)["decode_seconds"].is_number());
}

TEST_CASE("config files") {
  auto& w = ws();
  write_file(w.dir / "run.cfg",
             "# model 2 settings\n"
             "n_neurons = 34\n"
             "threshold = 0.1\n"
             "exemplar = grumble=" + w.s("grumble.wav") + "\n"
             "exemplar = alarm=" + w.s("alarm.wav") + "\n"
             "exemplar = noise=" + w.s("noise.wav") + "\n"
             "output = " + w.s("cfg.json") + "\n");
  Run r = invoke({"store", "--config", w.s("run.cfg")});
  REQUIRE(r.code == 0);
  CHECK(load_model(w.s("cfg.json")).model.size() == 34);

  // Flags take precedence over the file.
  Run flag = invoke({"store", "--config", w.s("run.cfg"), "--neurons", "40", "-o", w.s("cfg40.json")});
  REQUIRE(flag.code == 0);
  CHECK(load_model(w.s("cfg40.json")).model.size() == 40);

  write_file(w.dir / "bad.cfg", "n_neurons = 34\nthreshold = lots\n");
  Run bad = invoke({"store", "--config", w.s("bad.cfg")});
  CHECK(bad.code == cli::kExitInput);
  CHECK(bad.err.find("bad.cfg:2") != std::string::npos);

  write_file(w.dir / "unknown.cfg", "\n\nneurons = 34\n");
  Run unknown = invoke({"store", "--config", w.s("unknown.cfg")});
  CHECK(unknown.code == cli::kExitInput);
  CHECK(unknown.err.find("unknown.cfg:3") != std::string::npos);

  write_file(w.dir / "range.cfg", "threshold = 1.5\n");
  CHECK(invoke({"store", "--config", w.s("range.cfg")}).code == cli::kExitInput);

  std::istringstream in("band_high_hz = 2000\nwindow = Hann\ninput = a.wav\ninput = b.wav\n");
  cli::RunConfig c;
  cli::apply_config(in, "mem", c);
  CHECK(c.band_high_hz == 2000);
  CHECK(c.window == "hann");
  CHECK(c.inputs == std::vector<std::string>{"a.wav", "b.wav"});
  CHECK(c.n_neurons == 14);
}

TEST_CASE("helpers") {
  auto e = cli::parse_exemplar("Alarm = /tmp/a.wav");
  CHECK(e.first == "alarm");
  CHECK(e.second == "/tmp/a.wav");
  CHECK_THROWS(cli::parse_exemplar("=x"));
  auto& w = ws();
  auto files = cli::expand_inputs({(w.dir / "*.wav").string(), "literal.wav"});
  REQUIRE(files.size() == 5);
  CHECK(std::is_sorted(files.begin(), files.end() - 1));
  CHECK(files.back() == "literal.wav");
}
