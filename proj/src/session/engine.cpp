#include "chronicle/session/engine.hpp"

#include <algorithm>

#include "chronicle/error.hpp"

namespace chronicle::session {

using analytics::EventType;
using analytics::TraceEvent;

namespace {

EventType event_type_for(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::kSpinnerOn: return EventType::kSpinnerOn;
    case DirectiveKind::kSpinnerOff: return EventType::kSpinnerOff;
    case DirectiveKind::kRenderResponse:
    case DirectiveKind::kReplaceInPlace: return EventType::kRenderApplied;
    case DirectiveKind::kEvict: return EventType::kEvicted;
    case DirectiveKind::kCancel: return EventType::kCancelled;
    case DirectiveKind::kRecolor: return EventType::kRecolored;
    case DirectiveKind::kHold: return EventType::kHeld;
    case DirectiveKind::kRelease: return EventType::kReleased;
  }
  return EventType::kRenderApplied;
}

workload::Assignment make_assignment(const SessionConfig& config) {
  sched::Rng rng(config.seed, sched::kDataStream);
  return workload::generate_assignment(config.task, rng, config.generation);
}

}  // namespace

analytics::Json answer_to_json(const workload::Answer& answer) {
  if (answer.kind == workload::TaskKind::kThreshold) return answer.exceeds;
  return workload::to_string(answer);
}

workload::Answer answer_from_json(workload::TaskKind kind, const analytics::Json& value) {
  if (kind == workload::TaskKind::kThreshold && value.is_boolean()) {
    return workload::Answer::threshold(value.get<bool>());
  }
  if (!value.is_string()) throw Error(ErrorCode::kParse, "answer has the wrong JSON type");
  return workload::parse_answer(kind, value.get<std::string>());
}

SessionEngine::SessionEngine(SessionConfig config, Delivery delivery)
    : config_(std::move(config)),
      delivery_(delivery),
      assignment_(make_assignment(config_)),
      buffer_(config_.policy, config_.task.facets),
      latency_(config_.latency, sched::Rng(config_.seed, sched::kLatencyStream)) {
  TraceEvent start;
  start.t = 0.0;
  start.type = EventType::kSessionStart;
  start.config = to_json(config_);
  log(std::move(start));
}

void SessionEngine::log(TraceEvent event) { trace_.events.push_back(std::move(event)); }

void SessionEngine::log_directives(const Directives& directives) {
  for (const auto& d : directives) {
    TraceEvent e;
    e.t = d.at;
    e.type = event_type_for(d.kind);
    e.req_id = d.req_id;
    e.target = d.target;
    e.slot = d.slot;
    log(std::move(e));
    directives_.push_back(d);
  }
}

void SessionEngine::touch(Seconds t) {
  if (t < now_) {
    throw Error(ErrorCode::kProtocolViolation, "session time moved backward");
  }
  now_ = t;
}

bool SessionEngine::has_target(const Target& target) const {
  const auto& facets = config_.task.facets;
  return std::find(facets.begin(), facets.end(), target) != facets.end();
}

ReqId SessionEngine::issue(const Target& target, Seconds t, std::optional<ReqId> id) {
  if (!has_target(target)) {
    throw Error(ErrorCode::kProtocolViolation, "unknown facet '" + target + "'");
  }
  touch(t);
  const ReqId req_id = id.value_or(next_id_);
  // Validate before logging so a rejected request leaves no trace.
  auto directives = buffer_.admit_request({req_id, target, t});
  next_id_ = req_id + 1;
  targets_[req_id] = target;

  TraceEvent e;
  e.t = t;
  e.type = EventType::kRequestIssued;
  e.req_id = req_id;
  e.target = target;
  log(std::move(e));
  log_directives(directives);

  if (delivery_ == Delivery::kScheduled) {
    responses_.schedule(req_id, t + latency_.sample());
  }
  return req_id;
}

Directives SessionEngine::deliver(ReqId id, Seconds t) {
  auto target = targets_.find(id);
  if (target == targets_.end()) {
    throw Error(ErrorCode::kUnknownRequest, "response for unknown req " + std::to_string(id));
  }
  touch(t);
  ResponsePayload payload{id, assignment_.data.at(target->second), t};
  auto directives = buffer_.admit_response(payload);

  TraceEvent arrived;
  arrived.t = t;
  arrived.type = EventType::kResponseArrived;
  arrived.req_id = id;
  arrived.target = target->second;
  log(std::move(arrived));
  if (directives.empty()) {
    TraceEvent dropped;
    dropped.t = t;
    dropped.type = EventType::kDroppedResponse;
    dropped.req_id = id;
    dropped.target = target->second;
    log(std::move(dropped));
  }
  log_directives(directives);
  return directives;
}

std::optional<Seconds> SessionEngine::next_due() const {
  std::optional<Seconds> due = buffer_.next_release_at();
  if (!responses_.empty()) {
    const Seconds head = responses_.peek().due_at;
    if (!due || head < *due) due = head;
  }
  return due;
}

Directives SessionEngine::step() {
  const auto release = buffer_.next_release_at();
  if (release && (responses_.empty() || *release <= responses_.peek().due_at)) {
    touch(*release);
    auto directives = buffer_.release_due(*release);
    log_directives(directives);
    return directives;
  }
  auto event = responses_.advance();
  return deliver(event.payload, event.due_at);
}

Directives SessionEngine::advance_until(Seconds t) {
  Directives all;
  while (auto due = next_due()) {
    if (*due > t) break;
    auto step_out = step();
    all.insert(all.end(), step_out.begin(), step_out.end());
  }
  return all;
}

Directives SessionEngine::release_until(Seconds t) {
  Directives all;
  while (auto due = buffer_.next_release_at()) {
    if (*due > t) break;
    touch(*due);
    auto out = buffer_.release_due(*due);
    log_directives(out);
    all.insert(all.end(), out.begin(), out.end());
  }
  return all;
}

bool SessionEngine::submit(const workload::Answer& answer, Seconds t) {
  touch(t);
  const bool correct = answer == assignment_.ground_truth;
  TraceEvent e;
  e.t = t;
  e.type = EventType::kAnswerSubmitted;
  e.answer = answer_to_json(answer);
  e.correct = correct;
  log(std::move(e));
  submitted_ = true;
  return correct;
}

void SessionEngine::end(Seconds t) {
  if (ended_) return;
  touch(t);
  TraceEvent e;
  e.t = t;
  e.type = EventType::kSessionEnd;
  log(std::move(e));
  ended_ = true;
}

}  // namespace chronicle::session
