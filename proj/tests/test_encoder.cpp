#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hopcall/encoder.hpp"
#include "hopcall/error.hpp"
#include "support/generators.hpp"

using namespace hopcall;

namespace {

EncoderConfig cfg(std::size_t n, double lo = 0, double hi = 1300) { return EncoderConfig{n, {lo, hi}, 0.1}; }

PeakSet peaks_at(std::vector<double> freqs, FrequencyBand band = {0, 1300}) {
  PeakSet ps;
  ps.band = band;
  ps.threshold = 0.1;
  std::sort(freqs.begin(), freqs.end());
  for (double f : freqs) ps.peaks.push_back({f, 0.5, 0});
  return ps;
}

}  // namespace

TEST_CASE("bin_of on the stored call frequencies") {
  CHECK(bin_of(930, cfg(14)) == 10);
  CHECK(bin_of(320, cfg(14)) == 3);
  CHECK(bin_of(70, cfg(34)) == 1);
  CHECK(bin_of(0, cfg(14)) == 0);
  CHECK(bin_of(1300, cfg(14)) == 13);
  CHECK(bin_of(1299.999, cfg(14)) == 13);
  CHECK(bin_of(300, cfg(10, 200, 700)) == 2);
}

TEST_CASE("bin_of rejects frequencies outside the band") {
  for (double f : {-1.0, 1300.5, 5000.0}) {
    try {
      bin_of(f, cfg(14));
      FAIL("out-of-band frequency accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfBand);
    }
  }
  CHECK_THROWS_AS(bin_of(150, cfg(14, 200, 700)), Error);
}

TEST_CASE("bin_of matches floor of the band fraction") {
  gen::Rng rng(2);
  for (int trial = 0; trial < 5000; ++trial) {
    std::size_t n = gen::uniform_index(rng, 2, 64);
    double lo = gen::uniform_real(rng, 0, 500), hi = lo + gen::uniform_real(rng, 10, 3000);
    double f = gen::uniform_real(rng, lo, hi);
    long expect = static_cast<long>(std::floor((f - lo) / (hi - lo) * double(n)));
    expect = std::min<long>(expect, long(n) - 1);
    REQUIRE(long(bin_of(f, cfg(n, lo, hi))) == expect);
  }
}

TEST_CASE("encode examples") {
  auto one = encode(peaks_at({930}), cfg(14));
  CHECK(one.to_string() == "----------+---");
  auto two = encode(peaks_at({320, 930}), cfg(14));
  CHECK(two.to_string() == "---+------+---");
  auto none = encode(peaks_at({}), cfg(14));
  CHECK(none == BipolarPattern(14));
  CHECK(none.active_count() == 0);
}

TEST_CASE("encode rejects a peak set from another band") {
  try {
    encode(peaks_at({500}, {0, 2000}), cfg(14));
    FAIL("band mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigMismatch);
  }
}

TEST_CASE("encode properties on random peak sets") {
  gen::Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = gen::uniform_index(rng, 2, 40);
    EncoderConfig c = cfg(n);
    std::vector<double> freqs;
    for (std::size_t k = 0, m = gen::uniform_index(rng, 0, 10); k < m; ++k) freqs.push_back(gen::uniform_real(rng, 0, 1300));
    PeakSet ps = peaks_at(freqs);
    BipolarPattern x = encode(ps, c);
    REQUIRE(x.size() == n);
    for (auto v : x.states()) REQUIRE((v == 1 || v == -1));

    // Same peaks in a different order give the same pattern.
    PeakSet shuffled = ps;
    std::shuffle(shuffled.peaks.begin(), shuffled.peaks.end(), rng);
    REQUIRE(encode(shuffled, c) == x);

    std::set<std::size_t> bins;
    for (double f : freqs) bins.insert(bin_of(f, c));
    REQUIRE(x.active_count() <= freqs.size());
    REQUIRE(x.active_count() == bins.size());
    for (std::size_t i = 0; i < n; ++i) REQUIRE((x[i] == 1) == (bins.count(i) == 1));

    const double width = 1300.0 / double(n);
    for (std::size_t a = 0; a < freqs.size(); ++a)
      for (std::size_t b = a + 1; b < freqs.size(); ++b)
        if (std::abs(freqs[a] - freqs[b]) > width) REQUIRE(bin_of(freqs[a], c) != bin_of(freqs[b], c));
  }
}

TEST_CASE("pattern helpers") {
  BipolarPattern x(std::vector<std::int8_t>{1, -1, 1, 1});
  CHECK(x.active_count() == 3);
  CHECK(x.negated().to_string() == "-+--");
  x.flip(1);
  CHECK(x.to_string() == "++++");
  CHECK_THROWS_AS(x.set(0, 0), Error);
  CHECK_THROWS_AS(BipolarPattern(std::vector<std::int8_t>{1, 2}), Error);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(cfg(14).validate());
  CHECK_THROWS_AS(cfg(1).validate(), Error);
  CHECK_THROWS_AS(cfg(14, 500, 500).validate(), Error);
  EncoderConfig t = cfg(14);
  t.threshold = 1.0;
  CHECK_THROWS_AS(t.validate(), Error);
  t.threshold = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
}
