#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/analytics/metrics.hpp"
#include "chronicle/session/config.hpp"
#include "chronicle/session/engine.hpp"

namespace chronicle::session {

struct SessionSummary {
  SessionConfig config;
  analytics::MetricReport metrics;
  std::optional<workload::Answer> answer;
  bool correct = false;
  std::string trace_path;  // empty when not persisted
  analytics::Trace trace;
  Directives directives;
};

// Drives the configured agent against a fresh engine until it submits.
// Idle virtual time is skipped. Throws Error(kStuckSession) when the agent
// stops making progress with nothing left in flight.
SessionSummary run_simulation(const SessionConfig& config,
                              const std::optional<std::string>& out_path = std::nullopt);

struct ScriptedHover {
  Seconds at = 0.0;
  Target target;
};

// Replays a fixed hover schedule, then submits `answer` at `submit_at`
// (after everything due by then was delivered). No agent involved.
SessionSummary run_scripted(const SessionConfig& config, const std::vector<ScriptedHover>& script,
                            const workload::Answer& answer, Seconds submit_at);

// The hover schedule and per-request latencies recorded in a trace. Feeding
// both back through run_scripted with a trace latency profile reproduces the
// same directive stream.
struct RecordedSchedule {
  std::vector<ScriptedHover> hovers;
  std::vector<Seconds> latencies;  // by issue order; unanswered requests get the submit gap
};
RecordedSchedule recorded_schedule(const analytics::Trace& trace);

}  // namespace chronicle::session
