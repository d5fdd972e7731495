#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chronicle/analytics/cleaning.hpp"
#include "chronicle/analytics/metrics.hpp"
#include "chronicle/analytics/stats.hpp"

namespace chronicle::analytics {

enum class Metric {
  kCompletionTime,
  kAccuracy,
  kConcurrencyFraction,
  kOutOfOrder,
  kMismatch,
  kFlashing,
};

std::string_view to_string(Metric metric);
// Comma-separated metric names; throws Error(kConfiguration) on unknown ones.
std::vector<Metric> parse_metric_list(std::string_view text);
std::vector<Metric> all_metrics();
double metric_value(const MetricReport& report, Metric metric);

enum class TwoSampleTest { kSignedRank, kRankSum };
TwoSampleTest parse_two_sample_test(std::string_view text);

struct AnalysisOptions {
  bool clean = false;
  Seconds max_completion = kMaxCompletionTime;
  Seconds flash_window = kDefaultFlashWindow;
  std::vector<Metric> metrics = all_metrics();
  // A session_start config field: policy, latency, task, agent, participant.
  std::string group_by = "policy";
  std::vector<std::pair<std::string, std::string>> compare;
  TwoSampleTest test = TwoSampleTest::kRankSum;
  double alpha = 0.05;
  bool holm = false;
};

struct TraceRow {
  std::string source;
  std::string participant;
  std::string group;
  MetricReport metrics;
};

struct GroupSummary {
  std::string group;
  Metric metric = Metric::kCompletionTime;
  std::size_t n = 0;
  MedianInterval interval;
};

struct Comparison {
  std::string a;
  std::string b;
  Metric metric = Metric::kCompletionTime;
  std::optional<HypothesisTestResult> result;
  std::string issue;        // why no result could be computed
  double threshold = 0.0;   // significance level the p-value is held against
  bool reject = false;
};

struct AnalysisReport {
  std::vector<TraceRow> rows;
  std::optional<CleaningReport> cleaning;
  std::vector<GroupSummary> groups;
  std::vector<Comparison> comparisons;
};

// Participant label used for cleaning: the config's participant, else its
// agent, else "anonymous".
std::string participant_of(const Trace& trace);

AnalysisReport analyze(std::vector<LabeledTrace> traces, const AnalysisOptions& options);

Json to_json(const AnalysisReport& report);
// Aligned plain-text tables.
std::string to_table(const AnalysisReport& report);

}  // namespace chronicle::analytics
