// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "hopcall/bench.hpp"
#include "hopcall/bout.hpp"
#include "hopcall/classifier.hpp"
#include "hopcall/fixtures.hpp"
#include "hopcall/hopfield.hpp"
#include "hopcall/metrics.hpp"
#include "hopcall/model_file.hpp"
#include "support/generators.hpp"

using namespace hopcall;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::int64_t scaled_energy(const HopfieldModel& m, const BipolarPattern& x) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      std::int64_t c = 0;
      for (const auto& s : m.stored()) c += s.pattern[i] * s.pattern[j];
      total -= c * x[i] * x[j];
    }
  return total;
}

Verdict hebbian_structure() {
  gen::Rng rng(101);
  double worst = 0.0;
  bool symmetric = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 ? 34 : 14;
    HopfieldModel m = gen::model(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
      symmetric = symmetric && m.weight(i, i) == 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        symmetric = symmetric && m.weight(i, j) == m.weight(j, i);
        if (i == j) continue;
        double sum = 0.0;
        for (const auto& s : m.stored()) sum += double(s.pattern[i]) * double(s.pattern[j]);
        worst = std::max(worst, std::abs(m.weight(i, j) - sum / double(n)));
      }
    }
  }
  return {symmetric && worst <= 1e-12, fmt("100 models, exact symmetry/zero diagonal %s, max |w - sum/N| = %.1e",
                                           symmetric ? "yes" : "no", worst)};
}

Verdict energy_monotonicity() {
  gen::Rng rng(202);
  std::size_t violations = 0, updates = 0;
  for (int probe = 0; probe < 10000; ++probe) {
    const std::size_t n = gen::uniform_index(rng, 2, 34);
    HopfieldModel m = gen::model(rng, n);
    auto start = gen::bipolar(rng, n);
    std::int64_t last = scaled_energy(m, start);
    converge(m, start, kDefaultMaxPasses, [&](std::size_t, const BipolarPattern& s) {
      std::int64_t e = scaled_energy(m, s);
      violations += e > last;
      last = e;
      ++updates;
    });
  }
  return {violations == 0, fmt("10000 probes, %zu state flips, %zu energy increases", updates, violations)};
}

Verdict fixed_point_recall() {
  gen::Rng rng(303);
  const std::size_t trials = 1000, n = 34, p = 3, flipped = 3;  // 10% of 34 bits
  std::vector<std::size_t> self(p, 0), noisy(p, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    HopfieldModel m = gen::model(rng, n, p);
    for (std::size_t k = 0; k < p; ++k) {
      const auto& s = m.stored()[k];
      auto r = converge(m, s.pattern);
      self[k] += r.outcome == Outcome::Retrieved && r.final_state == s.pattern;
      auto q = converge(m, gen::flip_bits(rng, s.pattern, flipped));
      noisy[k] += q.outcome == Outcome::Retrieved && q.label == s.label;
    }
  }
  double self_min = 1.0, noisy_min = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    self_min = std::min(self_min, double(self[k]) / trials);
    noisy_min = std::min(noisy_min, double(noisy[k]) / trials);
  }
  return {self_min >= 0.95 && noisy_min >= 0.90,
          fmt("N=34 p=3, 1000 trials: worst-pattern self-retrieval %.3f (>= 0.95), with 3 flipped bits %.3f (>= 0.90)",
              self_min, noisy_min)};
}

Verdict oracle_equivalence() {
  gen::Rng rng(404);
  std::size_t models = 0, states = 0, mismatches = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::size_t p = 1; p <= std::min<std::size_t>(2, boundary_capacity(n)); ++p) {
      for (int rep = 0; rep < 3; ++rep) {
        HopfieldModel m = HopfieldModel::store(gen::distinct_patterns(rng, n, p), gen::config_for(n));
        auto table = fixtures::brute_force_attractors(m);
        for (std::uint32_t s = 0; s < table.size(); ++s) {
          auto r = converge(m, fixtures::pattern_of(s, n));
          bool same = fixtures::mask_of(r.final_state) == table[s].final_state && r.outcome == table[s].outcome &&
                      r.label.value_or("") == table[s].label;
          mismatches += !same;
          ++states;
        }
        ++models;
      }
    }
  }
  return {mismatches == 0 && states > 0,
          fmt("%zu models with N<=12, p<=2: %zu start states, %zu disagreements", models, states, mismatches)};
}

std::vector<SegmentClassification> rows_from(const std::string& codes, std::size_t first) {
  std::vector<SegmentClassification> rows;
  for (std::size_t k = 0; k < codes.size(); ++k) {
    SegmentClassification r;
    r.source_id = "table.wav";
    r.segment_index = first + k;
    r.start_time_s = double(first + k);
    r.label = codes[k] == 'G' ? "grumble" : codes[k] == 'N' ? "noise" : "unid";
    rows.push_back(r);
  }
  return rows;
}

std::vector<Bout> grumbles(const std::vector<Bout>& bouts) {
  std::vector<Bout> out;
  for (const auto& b : bouts)
    if (b.cls == "grumble") out.push_back(b);
  return out;
}

Verdict table_replay() {
  auto m1 = grumbles(extract_bouts(rows_from("UUGGGUUGGGUUUUU", 280)));
  auto m2 = grumbles(extract_bouts(rows_from("NNUUNUGGGGUNNNN", 280)));
  bool ok1 = m1 == std::vector<Bout>{{"table.wav", "grumble", 282, 285}, {"table.wav", "grumble", 287, 290}};
  bool ok2 = m2 == std::vector<Bout>{{"table.wav", "grumble", 286, 290}};
  return {ok1 && ok2, fmt("first model %zu grumble bouts (%s), second model %zu (%s)", m1.size(),
                          ok1 ? "[282,285) [287,290)" : "mismatch", m2.size(), ok2 ? "[286,290)" : "mismatch")};
}

Verdict metric_arithmetic() {
  struct Row {
    const char* cls;
    double p, r;
    std::size_t support;
  };
  const Row model1[] = {{"grumble", 0.53, 0.81, 203}, {"alarm", 0.92, 0.69, 32}, {"non-call", 0.90, 0.97, 1263}};
  const Row model2[] = {{"grumble", 0.80, 0.80, 203}, {"alarm", 0.90, 0.84, 32}, {"non-call", 0.97, 0.97, 1263}};
  auto accuracy = [](const Row(&rows)[3]) {
    ConfusionCounts c;
    for (const auto& row : rows) {
      auto tp = std::size_t(std::lround(row.r * double(row.support)));
      auto fp = std::size_t(std::lround(double(tp) * (1 - row.p) / row.p));
      c.per_class[row.cls] = {tp, fp, row.support - tp};
    }
    return report(c).overall_accuracy;
  };
  const double f1 = f1_score(0.53, 0.81), a1 = accuracy(model1), a2 = accuracy(model2);
  bool ok = std::abs(f1 - 0.64) <= 0.005 && std::abs(a1 - 0.83) <= 0.01 && std::abs(a2 - 0.94) <= 0.01;
  return {ok, fmt("F1(0.53, 0.81) = %.4f, reconstructed accuracies %.4f and %.4f", f1, a1, a2)};
}

ConfusionCounts evaluate(const HopfieldModel& model, const fixtures::Corpus& corpus) {
  auto rows = classify_file(model, corpus.audio, {}, corpus.source_id);
  auto bouts = extract_bouts(rows);
  return match_bouts(bouts, corpus.labels);
}

Verdict end_to_end() {
  const EncoderConfig m1_cfg{14, {0, 1300}, 0.1}, m2_cfg{34, {0, 1300}, 0.1};
  HopfieldModel m1 = store_from_audio(fixtures::model1_exemplars(), m1_cfg, {});
  HopfieldModel m2 = store_from_audio(fixtures::model2_exemplars(), m2_cfg, {});

  auto clean = fixtures::generate_corpus(fixtures::call_corpus(600, 2024));
  auto r = report(evaluate(m1, clean));
  const ClassMetrics* g = r.find("grumble");
  const ClassMetrics* a = r.find("alarm");
  double gf = g ? g->f1 : 0.0, af = a ? a->f1 : 0.0;

  auto noisy = fixtures::generate_corpus(fixtures::noise_overlap_corpus(600, 2024));
  auto fp1 = evaluate(m1, noisy).per_class["grumble"].fp;
  auto fp2 = evaluate(m2, noisy).per_class["grumble"].fp;
  bool ok = gf >= 0.95 && af >= 0.95 && fp2 < fp1;
  return {ok, fmt("10-min corpus F1 grumble %.3f alarm %.3f (>= 0.95); noise fixture grumble FP %zu -> %zu with the "
                  "noise pattern stored",
                  gf, af, fp1, fp2)};
}

Verdict performance() {
  const EncoderConfig cfg{14, {0, 1300}, 0.1};
  auto exemplars = fixtures::model1_exemplars();
  HopfieldModel m = store_from_audio(exemplars, cfg, {});
  auto audio = fixtures::generate_corpus(fixtures::call_corpus(600, 77)).audio;
  BenchOptions options;
  options.classify_repeats = 2;
  BenchResult b = run_bench(m, audio, options, &exemplars);
  const double store_ms = b.store_pipeline_ms.value_or(1e9);
  bool ok = store_ms < 100.0 && b.store_ms < 100.0 && b.segments_per_second >= 100.0;
  return {ok, fmt("store %.3f ms (exemplar audio to model; Hebbian step %.4f ms) < 100 ms; %.0f segments/s "
                  "single-threaded (>= 100), %.1f h of audio per minute",
                  store_ms, b.store_ms, b.segments_per_second, b.audio_hours_per_minute)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict format_stability() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hopcall_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  HopfieldModel m = store_from_audio(fixtures::model2_exemplars(), {34, {0, 1300}, 0.1}, {});
  save_model(dir / "a.json", m, {});
  ModelFile back = load_model(dir / "a.json");
  save_model(dir / "b.json", back.model, back.spectral);
  bool model_same = slurp(dir / "a.json") == slurp(dir / "b.json");

  auto corpus = fixtures::generate_corpus(fixtures::noise_overlap_corpus(120, 9));
  auto path = fixtures::write_corpus(corpus, dir).wav;
  std::string first = format_classifications(classify_file(back.model, read_wav(path), {}, "noisy.wav"));
  std::string second = format_classifications(classify_file(back.model, read_wav(path), {}, "noisy.wav"));
  std::string threaded = format_classifications(classify_file(back.model, read_wav(path), {}, "noisy.wav", 4));
  bool csv_same = first == second && first == threaded;
  fs::remove_all(dir);
  return {model_same && csv_same, fmt("model save/load/save identical: %s; classification CSV identical over 3 runs: %s",
                                      model_same ? "yes" : "no", csv_same ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;  // 0 = no runtime bound
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"Hebbian structure", 1.0, hebbian_structure},
      {"Energy monotonicity", 10.0, energy_monotonicity},
      {"Fixed-point recall", 10.0, fixed_point_recall},
      {"Brute-force oracle equivalence", 60.0, oracle_equivalence},
      {"Detection table replay", 0.0, table_replay},
      {"Metric arithmetic", 0.0, metric_arithmetic},
      {"End-to-end synthetic corpus", 0.0, end_to_end},
      {"Performance", 0.0, performance},
      {"Format stability", 0.0, format_stability},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    bool pass = v.pass && in_time;
    failures += !pass;
    std::string timing = c.budget_s > 0.0 ? fmt("%.2f s of %.0f s", secs, c.budget_s) : fmt("%.2f s", secs);
    std::printf("[%s] %zu. %s: %s (%s)\n", pass ? "PASS" : "FAIL", k + 1, c.name, v.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
