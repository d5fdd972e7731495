#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chronicle/types.hpp"

namespace chronicle::workload {

enum class TaskKind { kThreshold, kMaximum, kTrend };
enum class TrendLabel { kIncreasing, kDecreasing, kFluctuating };

std::vector<Target> default_facets();  // "Jan" .. "Dec"

struct TaskSpec {
  TaskKind kind = TaskKind::kThreshold;
  double cutoff = 80.0;  // Threshold only
  std::vector<Target> facets = default_facets();

  // Question shown to a participant.
  std::string question() const;
};

// Text syntax: threshold:CUTOFF | maximum | trend
TaskSpec parse_task(std::string_view text);
std::string to_string(const TaskSpec& task);

struct Answer {
  TaskKind kind = TaskKind::kThreshold;
  bool exceeds = false;                            // Threshold
  Target facet;                                    // Maximum
  TrendLabel trend = TrendLabel::kFluctuating;     // Trend

  static Answer threshold(bool exceeds);
  static Answer maximum(Target facet);
  static Answer of_trend(TrendLabel label);

  bool operator==(const Answer&) const;
};

std::string_view to_string(TrendLabel label);
TrendLabel parse_trend_label(std::string_view text);
std::string to_string(const Answer& answer);
// Parses the textual form for the given task kind ("true"/"false", a facet,
// or a trend label).
Answer parse_answer(TaskKind kind, std::string_view text);

// Sign-supermajority of consecutive differences: more than two thirds up is
// increasing, more than two thirds down is decreasing, anything else is
// fluctuating.
TrendLabel classify_trend(const std::vector<double>& summaries);

struct Assignment {
  TaskSpec task;
  std::map<Target, Series> data;
  Answer ground_truth;

  // Per-facet means in facet order.
  std::vector<double> summaries() const;
};

}  // namespace chronicle::workload
