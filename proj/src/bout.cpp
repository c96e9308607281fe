#include "hopcall/bout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hopcall/csv.hpp"
#include "hopcall/error.hpp"

namespace hopcall {

namespace {

constexpr double kTimeEps = 1e-9;

// Half-open range of row indices.
struct Run {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t rule = 0;
};

std::string describe(const Bout& b) {
  return b.cls + " bout [" + csv::format_time(b.start_time_s) + ", " + csv::format_time(b.end_time_s) + ")";
}

}  // namespace

void BoutRules::validate() const {
  std::set<std::string_view> seen;
  for (const auto& r : calls) {
    if (r.label.empty() || r.label == kNonCallClass || r.label == kUnidLabel) {
      throw Error(ErrorCode::InvalidArgument, "'" + r.label + "' cannot be a call class");
    }
    if (!seen.insert(r.label).second) throw Error(ErrorCode::InvalidArgument, "duplicate rule for '" + r.label + "'");
    if (r.min_consecutive < 1) throw Error(ErrorCode::InvalidArgument, "min_consecutive must be at least 1");
    if (r.separation_s < 1.0) throw Error(ErrorCode::InvalidArgument, "separation must be at least 1 s");
  }
  if (!(segment_length_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "segment length must be positive");
  if (!(noncall_min_s > 0.0 && noncall_max_s >= noncall_min_s)) {
    throw Error(ErrorCode::InvalidArgument, "non-call limits must satisfy 0 < min <= max");
  }
}

const CallRule* BoutRules::rule_for(std::string_view label) const {
  for (const auto& r : calls) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

std::vector<Bout> extract_bouts(std::span<const SegmentClassification> rows, const BoutRules& rules) {
  rules.validate();
  std::vector<Bout> bouts;
  if (rows.empty()) return bouts;

  const std::string& source = rows.front().source_id;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].source_id != source) {
      throw Error(ErrorCode::MixedSources, "rows from '" + source + "' and '" + rows[k].source_id + "'");
    }
    if (k > 0 && rows[k].segment_index != rows[k - 1].segment_index + 1) {
      throw Error(ErrorCode::UnsortedInput, "segment " + std::to_string(rows[k].segment_index) + " follows " +
                                                std::to_string(rows[k - 1].segment_index));
    }
  }

  const double seg = rules.segment_length_s;
  auto start_of = [&](std::size_t k) { return rows[k].start_time_s; };
  auto end_of = [&](std::size_t k) { return rows[k - 1].start_time_s + seg; };

  // Qualifying runs for every call class.
  std::vector<Run> runs;
  for (std::size_t r = 0; r < rules.calls.size(); ++r) {
    const CallRule& rule = rules.calls[r];
    std::size_t k = 0;
    while (k < rows.size()) {
      if (rows[k].label != rule.label) {
        ++k;
        continue;
      }
      std::size_t e = k;
      while (e < rows.size() && rows[e].label == rule.label) ++e;
      if (e - k >= rule.min_consecutive) runs.push_back(Run{k, e, r});
      k = e;
    }
  }
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.begin < b.begin; });

  auto other_class_in_gap = [&](std::size_t rule, std::size_t gap_begin, std::size_t gap_end) {
    return std::any_of(runs.begin(), runs.end(), [&](const Run& run) {
      return run.rule != rule && run.begin >= gap_begin && run.end <= gap_end;
    });
  };

  std::vector<Run> call_bouts;
  for (std::size_t r = 0; r < rules.calls.size(); ++r) {
    std::vector<Run> mine;
    for (const Run& run : runs) {
      if (run.rule == r) mine.push_back(run);
    }
    for (std::size_t i = 0; i < mine.size(); ++i) {
      Run current = mine[i];
      while (i + 1 < mine.size()) {
        const Run& next = mine[i + 1];
        double gap_s = static_cast<double>(next.begin - current.end) * seg;
        if (gap_s >= rules.calls[r].separation_s - kTimeEps || other_class_in_gap(r, current.end, next.begin)) break;
        current.end = next.end;
        ++i;
      }
      call_bouts.push_back(current);
    }
  }

  std::vector<bool> in_call(rows.size(), false);
  for (const Run& run : call_bouts) {
    std::fill(in_call.begin() + static_cast<std::ptrdiff_t>(run.begin),
              in_call.begin() + static_cast<std::ptrdiff_t>(run.end), true);
    bouts.push_back(Bout{source, rules.calls[run.rule].label, start_of(run.begin), end_of(run.end)});
  }

  const auto max_segments =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(rules.noncall_max_s / seg + kTimeEps)));
  std::size_t k = 0;
  while (k < rows.size()) {
    if (in_call[k]) {
      ++k;
      continue;
    }
    std::size_t e = k;
    while (e < rows.size() && !in_call[e]) ++e;
    for (std::size_t piece = k; piece < e; piece += max_segments) {
      std::size_t piece_end = std::min(e, piece + max_segments);
      Bout b{source, std::string(kNonCallClass), start_of(piece), end_of(piece_end)};
      if (b.duration_s() >= rules.noncall_min_s - kTimeEps) bouts.push_back(std::move(b));
    }
    k = e;
  }

  std::sort(bouts.begin(), bouts.end(),
            [](const Bout& a, const Bout& b) { return a.start_time_s < b.start_time_s; });
  return bouts;
}

std::vector<Bout> extract_bouts_by_source(std::span<const SegmentClassification> rows, const BoutRules& rules) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<SegmentClassification>> groups;
  for (const auto& row : rows) {
    auto [it, inserted] = groups.try_emplace(row.source_id);
    if (inserted) order.push_back(row.source_id);
    it->second.push_back(row);
  }
  std::vector<Bout> out;
  for (const auto& source : order) {
    auto bouts = extract_bouts(groups[source], rules);
    out.insert(out.end(), std::make_move_iterator(bouts.begin()), std::make_move_iterator(bouts.end()));
  }
  return out;
}

void validate_bout(const Bout& bout, const BoutRules& rules) {
  if (!(bout.end_time_s > bout.start_time_s)) {
    throw Error(ErrorCode::InvariantViolation, describe(bout) + " does not end after it starts");
  }
  const double d = bout.duration_s();
  if (bout.cls == kNonCallClass) {
    if (d < rules.noncall_min_s - kTimeEps || d > rules.noncall_max_s + kTimeEps) {
      throw Error(ErrorCode::InvariantViolation, describe(bout) + " lasts " + csv::format_time(d) + " s");
    }
    return;
  }
  const CallRule* rule = rules.rule_for(bout.cls);
  if (!rule) throw Error(ErrorCode::SchemaError, "unknown bout class '" + bout.cls + "'");
  double min_d = static_cast<double>(rule->min_consecutive) * rules.segment_length_s;
  if (d < min_d - kTimeEps) {
    throw Error(ErrorCode::InvariantViolation,
                describe(bout) + " is shorter than the " + csv::format_time(min_d) + " s minimum");
  }
}

void write_bouts(std::ostream& out, std::span<const Bout> bouts) {
  out << kBoutHeader << '\n';
  for (const auto& b : bouts) {
    out << csv::escape(b.source_id) << ',' << csv::escape(b.cls) << ',' << csv::format_time(b.start_time_s) << ','
        << csv::format_time(b.end_time_s) << '\n';
  }
}

std::string format_bouts(std::span<const Bout> bouts) {
  std::ostringstream out;
  write_bouts(out, bouts);
  return out.str();
}

std::vector<Bout> read_bouts(std::istream& in, const BoutRules& rules) {
  std::string line;
  if (!csv::read_line(in, line) || line != kBoutHeader) {
    throw Error(ErrorCode::SchemaError, "expected header '" + std::string(kBoutHeader) + "'");
  }
  std::vector<Bout> bouts;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split_record(line);
    if (fields.size() != 4) throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": expected 4 fields");
    Bout b{fields[0], csv::lowercase(fields[1]), csv::parse_real(fields[2], line_no, "start_time_s"),
           csv::parse_real(fields[3], line_no, "end_time_s")};
    try {
      validate_bout(b, rules);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    bouts.push_back(std::move(b));
  }
  return bouts;
}

void save_bouts(std::span<const Bout> bouts, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_bouts(out, bouts);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<Bout> load_labels(const std::filesystem::path& path, const BoutRules& rules) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return read_bouts(in, rules);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace hopcall
