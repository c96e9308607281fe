#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopcall/classifier.hpp"

namespace hopcall {

inline constexpr std::string_view kNonCallClass = "non-call";

/// A sustained call or call-free interval, [start_time_s, end_time_s).
struct Bout {
  std::string source_id;
  std::string cls;
  double start_time_s = 0.0;
  double end_time_s = 0.0;

  double duration_s() const { return end_time_s - start_time_s; }
  friend bool operator==(const Bout&, const Bout&) = default;
};

struct CallRule {
  std::string label;
  std::size_t min_consecutive = 1;  // classification records needed to open a bout
  double separation_s = 1.0;        // shorter gaps between runs merge them
};

struct BoutRules {
  std::vector<CallRule> calls{{"grumble", 2, 1.0}, {"alarm", 3, 5.0}};
  double noncall_max_s = 60.0;
  double noncall_min_s = 1.0;
  double segment_length_s = 1.0;

  void validate() const;
  const CallRule* rule_for(std::string_view label) const;
};

/// Aggregates one file's per-segment labels into bouts.
///
/// Runs of a call label at least min_consecutive records long become bouts.
/// Two bouts of the same class whose gap is shorter than that class's
/// separation merge (the gap joins the span) unless a bout of another call
/// class sits inside the gap. Every remaining segment belongs to a non-call
/// stretch, cut left to right into pieces of at most noncall_max_s; a final
/// piece shorter than noncall_min_s is dropped. Output is sorted by start.
///
/// Throws UnsortedInput unless segment indices ascend by exactly one, and
/// MixedSources if rows name more than one source.
std::vector<Bout> extract_bouts(std::span<const SegmentClassification> rows, const BoutRules& rules = {});

/// Splits rows by source (keeping first-appearance order) and extracts each.
std::vector<Bout> extract_bouts_by_source(std::span<const SegmentClassification> rows, const BoutRules& rules = {});

/// InvariantViolation when a bout breaks the duration rules of its class;
/// SchemaError for a class the rules do not know.
void validate_bout(const Bout& bout, const BoutRules& rules = {});

inline constexpr std::string_view kBoutHeader = "source_file,class,start_time_s,end_time_s";

void write_bouts(std::ostream& out, std::span<const Bout> bouts);
std::string format_bouts(std::span<const Bout> bouts);
std::vector<Bout> read_bouts(std::istream& in, const BoutRules& rules = {});

void save_bouts(std::span<const Bout> bouts, const std::filesystem::path& path);
std::vector<Bout> load_labels(const std::filesystem::path& path, const BoutRules& rules = {});

}  // namespace hopcall
