#include "chronicle/session/replay.hpp"

#include "chronicle/error.hpp"
#include "chronicle/session/engine.hpp"

namespace chronicle::session {

using analytics::EventType;
using analytics::TraceEvent;

namespace {

[[noreturn]] void diverged(std::size_t index, const std::string& why) {
  throw Error(ErrorCode::kReplayDivergence,
              "replay diverges at line " + std::to_string(index + 1) + ": " + why);
}

std::string describe(const TraceEvent& e) { return analytics::to_json(e).dump(); }

SessionConfig replay_config(const analytics::Trace& trace) {
  if (trace.events.empty() || trace.events.front().type != EventType::kSessionStart ||
      !trace.events.front().config) {
    diverged(0, "trace does not open with a session_start carrying a config");
  }
  auto logged = *trace.events.front().config;
  // Arrival times come from the log; the latency profile is not consulted.
  logged.erase("latency");
  try {
    return config_from_json(logged);
  } catch (const Error& e) {
    diverged(0, std::string("unusable config: ") + e.what());
  }
}

}  // namespace

ReplayResult replay(const analytics::Trace& trace, bool verify) {
  const auto config = replay_config(trace);
  SessionEngine engine(config, SessionEngine::Delivery::kExternal);

  for (std::size_t i = 1; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    try {
      switch (e.type) {
        case EventType::kRequestIssued:
          if (!e.req_id || !e.target) diverged(i, "request_issued without req_id/target");
          engine.release_until(e.t);
          engine.issue(*e.target, e.t, *e.req_id);
          break;
        case EventType::kResponseArrived:
          if (!e.req_id) diverged(i, "response_arrived without req_id");
          engine.release_until(e.t);
          engine.deliver(*e.req_id, e.t);
          break;
        case EventType::kAnswerSubmitted:
          if (!e.answer) diverged(i, "answer_submitted without answer");
          engine.release_until(e.t);
          engine.submit(answer_from_json(config.task.kind, *e.answer), e.t);
          break;
        case EventType::kSessionEnd:
          engine.release_until(e.t);
          engine.end(e.t);
          break;
        default:
          break;
      }
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kReplayDivergence) throw;
      diverged(i, std::string("logged input rejected: ") + err.what());
    }
  }

  if (verify) {
    const auto& rebuilt = engine.trace().events;
    const auto& logged = trace.events;
    for (std::size_t i = 1; i < std::max(rebuilt.size(), logged.size()); ++i) {
      if (i >= logged.size()) diverged(i, "log ends; replay continues with " + describe(rebuilt[i]));
      if (i >= rebuilt.size()) diverged(i, "replay ends; log continues with " + describe(logged[i]));
      if (!(rebuilt[i] == logged[i])) {
        diverged(i, "logged " + describe(logged[i]) + ", replay produced " + describe(rebuilt[i]));
      }
    }
  }
  return {engine.directives(), verify ? trace.events.size() - 1 : 0};
}

}  // namespace chronicle::session
