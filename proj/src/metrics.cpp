#include "hopcall/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

#include <json.hpp>

#include "hopcall/error.hpp"

namespace hopcall {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  for (const auto& [cls, c] : other.per_class) {
    ClassCounts& mine = per_class[cls];
    mine.tp += c.tp;
    mine.fp += c.fp;
    mine.fn += c.fn;
  }
  return *this;
}

namespace {

void check_single_source(std::span<const Bout> predicted, std::span<const Bout> labelled) {
  const std::string* source = nullptr;
  for (auto seq : {predicted, labelled}) {
    for (const auto& b : seq) {
      if (!source) {
        source = &b.source_id;
      } else if (b.source_id != *source) {
        throw Error(ErrorCode::MixedSources, "bouts from '" + *source + "' and '" + b.source_id + "'");
      }
    }
  }
}

std::vector<const Bout*> sorted_by_start(std::span<const Bout> bouts) {
  std::vector<const Bout*> out;
  out.reserve(bouts.size());
  for (const auto& b : bouts) out.push_back(&b);
  std::stable_sort(out.begin(), out.end(), [](const Bout* a, const Bout* b) {
    if (a->start_time_s != b->start_time_s) return a->start_time_s < b->start_time_s;
    return a->end_time_s < b->end_time_s;
  });
  return out;
}

}  // namespace

ConfusionCounts match_bouts(std::span<const Bout> predicted, std::span<const Bout> labelled, double min_overlap_s) {
  check_single_source(predicted, labelled);
  auto preds = sorted_by_start(predicted);
  auto labels = sorted_by_start(labelled);
  std::vector<bool> taken(labels.size(), false);

  ConfusionCounts counts;
  for (const Bout* l : labels) counts.per_class[l->cls];
  for (const Bout* p : preds) {
    ClassCounts& c = counts.per_class[p->cls];
    bool matched = false;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const Bout* l = labels[j];
      if (taken[j] || l->cls != p->cls) continue;
      double overlap = std::min(p->end_time_s, l->end_time_s) - std::max(p->start_time_s, l->start_time_s);
      if (overlap >= min_overlap_s - 1e-9) {
        taken[j] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (!taken[j]) ++counts.per_class[labels[j]->cls].fn;
  }
  return counts;
}

ConfusionCounts match_bouts_by_source(std::span<const Bout> predicted, std::span<const Bout> labelled,
                                      double min_overlap_s) {
  std::map<std::string, std::pair<std::vector<Bout>, std::vector<Bout>>> groups;
  for (const auto& b : predicted) groups[b.source_id].first.push_back(b);
  for (const auto& b : labelled) groups[b.source_id].second.push_back(b);
  ConfusionCounts total;
  for (const auto& [source, pair] : groups) total += match_bouts(pair.first, pair.second, min_overlap_s);
  return total;
}

const ClassMetrics* ClassificationReport::find(const std::string& cls) const {
  for (const auto& m : classes) {
    if (m.cls == cls) return &m;
  }
  return nullptr;
}

double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

ClassificationReport report(const ConfusionCounts& counts) {
  ClassificationReport out;
  std::size_t tp_sum = 0, fp_sum = 0;
  for (const auto& [cls, c] : counts.per_class) {
    ClassMetrics m;
    m.cls = cls;
    m.counts = c;
    m.precision = c.tp + c.fp > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
    m.recall = c.support() > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.support()) : 0.0;
    m.f1 = f1_score(m.precision, m.recall);
    tp_sum += c.tp;
    fp_sum += c.fp;
    out.total_support += c.support();
    out.classes.push_back(std::move(m));
  }
  std::stable_partition(out.classes.begin(), out.classes.end(),
                        [](const ClassMetrics& m) { return m.cls != kNonCallClass; });
  out.overall_accuracy = tp_sum + fp_sum > 0 ? static_cast<double>(tp_sum) / static_cast<double>(tp_sum + fp_sum) : 0.0;
  return out;
}

std::string format_report_table(const ClassificationReport& r) {
  std::size_t width = 8;
  for (const auto& m : r.classes) width = std::max(width, m.cls.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %9s  %6s  %5s  %7s\n", static_cast<int>(width), "class", "precision", "recall",
                "f1", "support");
  out += buf;
  for (const auto& m : r.classes) {
    std::snprintf(buf, sizeof buf, "%-*s  %9.2f  %6.2f  %5.2f  %7zu\n", static_cast<int>(width), m.cls.c_str(),
                  m.precision, m.recall, m.f1, m.counts.support());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "overall accuracy (micro precision): %.2f   support: %zu\n", r.overall_accuracy,
                r.total_support);
  out += buf;
  return out;
}

std::string format_report_json(const ClassificationReport& r) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& m : r.classes) {
    classes.push_back({{"class", m.cls},
                       {"precision", m.precision},
                       {"recall", m.recall},
                       {"f1", m.f1},
                       {"support", m.counts.support()},
                       {"tp", m.counts.tp},
                       {"fp", m.counts.fp},
                       {"fn", m.counts.fn}});
  }
  doc["classes"] = std::move(classes);
  doc["overall_accuracy"] = r.overall_accuracy;
  doc["overall_accuracy_definition"] = "sum(tp) / (sum(tp) + sum(fp))";
  doc["total_support"] = r.total_support;
  return doc.dump(2) + "\n";
}

}  // namespace hopcall
