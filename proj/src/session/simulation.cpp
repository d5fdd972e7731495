#include "chronicle/session/simulation.hpp"

#include <algorithm>
#include <map>

#include "chronicle/analytics/trace_io.hpp"
#include "chronicle/error.hpp"

namespace chronicle::session {

namespace {

// Hard ceiling on loop iterations; far above any finite session.
constexpr std::size_t kMaxSteps = 1'000'000;

SessionSummary summarize(const SessionEngine& engine, std::optional<workload::Answer> answer,
                         bool correct) {
  SessionSummary summary;
  summary.config = engine.config();
  summary.trace = engine.trace();
  summary.metrics = analytics::compute_metrics(summary.trace);
  summary.answer = std::move(answer);
  summary.correct = correct;
  summary.directives = engine.directives();
  return summary;
}

[[noreturn]] void stuck(Seconds now, const std::string& why) {
  throw Error(ErrorCode::kStuckSession, "session stuck at t=" + std::to_string(now) + ": " + why);
}

}  // namespace

SessionSummary run_simulation(const SessionConfig& config,
                              const std::optional<std::string>& out_path) {
  if (!config.agent) throw Error(ErrorCode::kConfiguration, "simulation needs an agent");
  SessionEngine engine(config);
  workload::Agent agent(*config.agent, config.task);

  Seconds now = 0.0;
  std::size_t facts = 0;
  std::size_t idle_hovers = 0;
  std::optional<workload::Answer> answer;
  bool correct = false;

  for (std::size_t steps = 0;; ++steps) {
    if (steps >= kMaxSteps) stuck(now, "step limit reached");
    const auto action = agent.decide(engine.view(), now);

    if (agent.facts_read() != facts) {
      facts = agent.facts_read();
      idle_hovers = 0;
    }

    if (const auto* hover = std::get_if<workload::Hover>(&action)) {
      // Deliveries due now are applied before the new request.
      engine.advance_until(now);
      engine.issue(hover->target, now);
      if (++idle_hovers > 3 * config.task.facets.size() && !engine.next_due()) {
        stuck(now, "no new evidence after a full sweep");
      }
      continue;
    }
    if (const auto* submit = std::get_if<workload::Submit>(&action)) {
      answer = submit->answer;
      correct = engine.submit(submit->answer, now);
      engine.end(now);
      break;
    }

    const auto& wait = std::get<workload::Wait>(action);
    const auto due = engine.next_due();
    if (wait.until && *wait.until > now && (!due || *wait.until < *due)) {
      now = *wait.until;
    } else if (due) {
      engine.step();
      now = std::max(now, engine.now());
    } else {
      stuck(now, "agent waits with nothing in flight");
    }
  }

  auto summary = summarize(engine, std::move(answer), correct);
  if (out_path) {
    analytics::persist_trace(summary.trace, *out_path);
    summary.trace_path = *out_path;
  }
  return summary;
}

SessionSummary run_scripted(const SessionConfig& config, const std::vector<ScriptedHover>& script,
                            const workload::Answer& answer, Seconds submit_at) {
  SessionEngine engine(config);
  for (const auto& hover : script) {
    engine.advance_until(hover.at);
    engine.issue(hover.target, hover.at);
  }
  engine.advance_until(submit_at);
  const bool correct = engine.submit(answer, submit_at);
  engine.end(submit_at);
  return summarize(engine, answer, correct);
}

RecordedSchedule recorded_schedule(const analytics::Trace& trace) {
  using analytics::EventType;
  RecordedSchedule schedule;
  std::map<ReqId, std::size_t> index;
  std::vector<std::optional<Seconds>> latencies;
  std::vector<Seconds> issued;
  for (const auto& e : trace.events) {
    if (e.type == EventType::kRequestIssued && e.req_id && e.target) {
      index[*e.req_id] = schedule.hovers.size();
      schedule.hovers.push_back({e.t, *e.target});
      issued.push_back(e.t);
      latencies.emplace_back();
    } else if (e.type == EventType::kResponseArrived && e.req_id) {
      auto it = index.find(*e.req_id);
      if (it != index.end()) latencies[it->second] = e.t - issued[it->second];
    }
  }
  const Seconds end = trace.end_time();
  for (std::size_t i = 0; i < latencies.size(); ++i) {
    // Still in flight at the end: any delay past the end reproduces that.
    schedule.latencies.push_back(latencies[i].value_or(end - issued[i] + 1.0));
  }
  return schedule;
}

}  // namespace chronicle::session
