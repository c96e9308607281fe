#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hopcall/bout.hpp"

namespace hopcall {

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t support() const { return tp + fn; }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct ConfusionCounts {
  std::map<std::string, ClassCounts> per_class;

  ConfusionCounts& operator+=(const ConfusionCounts& other);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline constexpr double kDefaultMinOverlapS = 1.0;

/// Greedy one-to-one matching per class: predictions are visited by start
/// time and each takes the earliest-starting unmatched label of its class
/// that it overlaps by at least min_overlap_s. Both inputs must come from a
/// single, common source (MixedSources otherwise).
ConfusionCounts match_bouts(std::span<const Bout> predicted, std::span<const Bout> labelled,
                            double min_overlap_s = kDefaultMinOverlapS);

/// Matches source by source and sums the counts.
ConfusionCounts match_bouts_by_source(std::span<const Bout> predicted, std::span<const Bout> labelled,
                                      double min_overlap_s = kDefaultMinOverlapS);

struct ClassMetrics {
  std::string cls;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ClassCounts counts;
};

struct ClassificationReport {
  std::vector<ClassMetrics> classes;  // call classes, then non-call
  double overall_accuracy = 0.0;      // sum TP / (sum TP + sum FP)
  std::size_t total_support = 0;

  const ClassMetrics* find(const std::string& cls) const;
};

double f1_score(double precision, double recall);

ClassificationReport report(const ConfusionCounts& counts);

/// Aligned text table with two-decimal metrics and an accuracy footer.
std::string format_report_table(const ClassificationReport& report);
/// Full-precision JSON rendering.
std::string format_report_json(const ClassificationReport& report);

}  // namespace hopcall
