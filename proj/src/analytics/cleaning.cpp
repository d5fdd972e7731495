#include "chronicle/analytics/cleaning.hpp"

#include <map>
#include <set>

namespace chronicle::analytics {

CleanResult clean_traces(std::vector<LabeledTrace> traces, Seconds max_completion) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // wrong, total
  for (const auto& lt : traces) {
    auto& [wrong, total] = tally[lt.participant];
    ++total;
    if (!lt.trace.correct().value_or(false)) ++wrong;
  }
  std::set<std::string> unreliable;
  for (const auto& [participant, counts] : tally) {
    if (2 * counts.first > counts.second) unreliable.insert(participant);
  }

  CleanResult result;
  for (auto& lt : traces) {
    if (unreliable.count(lt.participant) != 0) {
      ++result.report.majority_wrong;
    } else if (lt.trace.completion_time() > max_completion) {
      ++result.report.too_long;
    } else if (lt.trace.count(EventType::kRequestIssued) == 0) {
      ++result.report.no_interaction;
    } else {
      result.kept.push_back(std::move(lt));
    }
  }
  result.report.kept = result.kept.size();
  return result;
}

Json to_json(const CleaningReport& report) {
  Json j;
  j["majority_wrong"] = report.majority_wrong;
  j["too_long"] = report.too_long;
  j["no_interaction"] = report.no_interaction;
  j["kept"] = report.kept;
  return j;
}

}  // namespace chronicle::analytics
