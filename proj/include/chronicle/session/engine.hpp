#pragma once

#include <optional>

#include "chronicle/analytics/trace.hpp"
#include "chronicle/buffer.hpp"
#include "chronicle/sched/event_queue.hpp"
#include "chronicle/sched/latency.hpp"
#include "chronicle/session/config.hpp"
#include "chronicle/workload/generator.hpp"

namespace chronicle::session {

// One session's engine: the assignment, the chronicle buffer, pending
// response deliveries, and the trace. Every directive the buffer emits is
// appended to the trace exactly once.
//
// With Delivery::kScheduled each issued request samples a latency and its
// response is queued internally; step() delivers it. With kExternal the
// caller delivers responses itself (used by replay).
//
// Tie rule: an Animation release due at the same time as a queued response is
// processed first. Replay relies on this order.
class SessionEngine {
 public:
  enum class Delivery { kScheduled, kExternal };

  explicit SessionEngine(SessionConfig config, Delivery delivery = Delivery::kScheduled);

  ReqId issue(const Target& target, Seconds t, std::optional<ReqId> id = std::nullopt);
  Directives deliver(ReqId id, Seconds t);

  std::optional<Seconds> next_due() const;
  // Processes the next internal event (response delivery or release).
  Directives step();
  // Steps through every internal event due at or before t.
  Directives advance_until(Seconds t);
  // Animation releases due at or before t, without delivering responses.
  Directives release_until(Seconds t);

  bool submit(const workload::Answer& answer, Seconds t);
  void end(Seconds t);

  bool has_target(const Target& target) const;
  std::vector<VisibleEntry> view() const { return buffer_.snapshot(); }
  Seconds now() const { return now_; }
  bool submitted() const { return submitted_; }
  bool ended() const { return ended_; }

  const SessionConfig& config() const { return config_; }
  const workload::Assignment& assignment() const { return assignment_; }
  const ChronicleBuffer& buffer() const { return buffer_; }
  const analytics::Trace& trace() const { return trace_; }
  const Directives& directives() const { return directives_; }

 private:
  void log(analytics::TraceEvent event);
  void log_directives(const Directives& directives);
  void touch(Seconds t);

  SessionConfig config_;
  Delivery delivery_;
  workload::Assignment assignment_;
  ChronicleBuffer buffer_;
  sched::LatencySampler latency_;
  sched::EventQueue<ReqId> responses_;
  std::map<ReqId, Target> targets_;
  analytics::Trace trace_;
  Directives directives_;
  ReqId next_id_ = 1;
  Seconds now_ = 0.0;
  bool submitted_ = false;
  bool ended_ = false;
};

analytics::Json answer_to_json(const workload::Answer& answer);
workload::Answer answer_from_json(workload::TaskKind kind, const analytics::Json& value);

}  // namespace chronicle::session
