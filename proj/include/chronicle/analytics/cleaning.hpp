#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chronicle/analytics/trace.hpp"

namespace chronicle::analytics {

inline constexpr Seconds kMaxCompletionTime = 120.0;

struct LabeledTrace {
  std::string participant;
  Trace trace;
  std::string source;  // e.g. the file it was loaded from
};

// Trace counts removed per rule. Each trace is attributed to the first rule
// that removes it, in the order the rules are listed.
struct CleaningReport {
  std::size_t majority_wrong = 0;  // participant answered most assignments wrong
  std::size_t too_long = 0;        // completion time above the limit
  std::size_t no_interaction = 0;  // no request_issued at all
  std::size_t kept = 0;
};

struct CleanResult {
  std::vector<LabeledTrace> kept;
  CleaningReport report;
};

// A trace without a submitted answer counts as a wrong answer.
CleanResult clean_traces(std::vector<LabeledTrace> traces,
                         Seconds max_completion = kMaxCompletionTime);

Json to_json(const CleaningReport& report);

}  // namespace chronicle::analytics
