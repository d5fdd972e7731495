#include "chronicle/workload/task.hpp"

#include <sstream>

#include "chronicle/error.hpp"
#include "chronicle/text.hpp"

namespace chronicle::workload {

std::vector<Target> default_facets() {
  return {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
}

std::string TaskSpec::question() const {
  switch (kind) {
    case TaskKind::kThreshold:
      return "Is there a month with a stock price higher than " + text::format_double(cutoff) +
             "?";
    case TaskKind::kMaximum:
      return "Which month had the highest stock price?";
    case TaskKind::kTrend:
      return "What is the trend in stock price from " + facets.front() + " to " +
             facets.back() + "?";
  }
  return {};
}

TaskSpec parse_task(std::string_view text) {
  TaskSpec task;
  if (text == "maximum") {
    task.kind = TaskKind::kMaximum;
    return task;
  }
  if (text == "trend") {
    task.kind = TaskKind::kTrend;
    return task;
  }
  constexpr std::string_view kThreshold = "threshold:";
  if (text.substr(0, kThreshold.size()) == kThreshold) {
    task.kind = TaskKind::kThreshold;
    task.cutoff = text::parse_double(text.substr(kThreshold.size()), "threshold cutoff");
    return task;
  }
  if (text == "threshold") return task;
  throw Error(ErrorCode::kConfiguration, "unrecognized task '" + std::string(text) +
                                             "' (expected threshold:CUT|maximum|trend)");
}

std::string to_string(const TaskSpec& task) {
  switch (task.kind) {
    case TaskKind::kThreshold: return "threshold:" + text::format_double(task.cutoff);
    case TaskKind::kMaximum: return "maximum";
    case TaskKind::kTrend: return "trend";
  }
  return {};
}

Answer Answer::threshold(bool exceeds) {
  Answer a;
  a.kind = TaskKind::kThreshold;
  a.exceeds = exceeds;
  return a;
}

Answer Answer::maximum(Target facet) {
  Answer a;
  a.kind = TaskKind::kMaximum;
  a.facet = std::move(facet);
  return a;
}

Answer Answer::of_trend(TrendLabel label) {
  Answer a;
  a.kind = TaskKind::kTrend;
  a.trend = label;
  return a;
}

bool Answer::operator==(const Answer& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case TaskKind::kThreshold: return exceeds == other.exceeds;
    case TaskKind::kMaximum: return facet == other.facet;
    case TaskKind::kTrend: return trend == other.trend;
  }
  return false;
}

std::string_view to_string(TrendLabel label) {
  switch (label) {
    case TrendLabel::kIncreasing: return "increasing";
    case TrendLabel::kDecreasing: return "decreasing";
    case TrendLabel::kFluctuating: return "fluctuating";
  }
  return "fluctuating";
}

TrendLabel parse_trend_label(std::string_view text) {
  if (text == "increasing") return TrendLabel::kIncreasing;
  if (text == "decreasing") return TrendLabel::kDecreasing;
  if (text == "fluctuating") return TrendLabel::kFluctuating;
  throw Error(ErrorCode::kParse, "unknown trend label '" + std::string(text) + "'");
}

std::string to_string(const Answer& answer) {
  switch (answer.kind) {
    case TaskKind::kThreshold: return answer.exceeds ? "true" : "false";
    case TaskKind::kMaximum: return answer.facet;
    case TaskKind::kTrend: return std::string(to_string(answer.trend));
  }
  return {};
}

Answer parse_answer(TaskKind kind, std::string_view text) {
  switch (kind) {
    case TaskKind::kThreshold:
      if (text == "true") return Answer::threshold(true);
      if (text == "false") return Answer::threshold(false);
      throw Error(ErrorCode::kParse, "threshold answer must be true or false");
    case TaskKind::kMaximum:
      return Answer::maximum(Target(text));
    case TaskKind::kTrend:
      return Answer::of_trend(parse_trend_label(text));
  }
  throw Error(ErrorCode::kParse, "bad answer");
}

TrendLabel classify_trend(const std::vector<double>& summaries) {
  if (summaries.size() < 2) return TrendLabel::kFluctuating;
  std::size_t up = 0;
  std::size_t down = 0;
  for (std::size_t i = 1; i < summaries.size(); ++i) {
    if (summaries[i] > summaries[i - 1]) ++up;
    if (summaries[i] < summaries[i - 1]) ++down;
  }
  const std::size_t diffs = summaries.size() - 1;
  if (3 * up > 2 * diffs) return TrendLabel::kIncreasing;
  if (3 * down > 2 * diffs) return TrendLabel::kDecreasing;
  return TrendLabel::kFluctuating;
}

std::vector<double> Assignment::summaries() const {
  std::vector<double> out;
  out.reserve(task.facets.size());
  for (const auto& facet : task.facets) {
    auto it = data.find(facet);
    if (it == data.end()) {
      throw Error(ErrorCode::kDegenerateData, "no data for facet '" + facet + "'");
    }
    out.push_back(series_mean(it->second));
  }
  return out;
}

}  // namespace chronicle::workload
