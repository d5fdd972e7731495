#include "chronicle/analytics/trace.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "chronicle/error.hpp"

namespace chronicle::analytics {

namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 14> kEventNames{{
    {EventType::kSessionStart, "session_start"},
    {EventType::kRequestIssued, "request_issued"},
    {EventType::kResponseArrived, "response_arrived"},
    {EventType::kRenderApplied, "render_applied"},
    {EventType::kSpinnerOn, "spinner_on"},
    {EventType::kSpinnerOff, "spinner_off"},
    {EventType::kEvicted, "evicted"},
    {EventType::kCancelled, "cancelled"},
    {EventType::kDroppedResponse, "dropped_response"},
    {EventType::kHeld, "held"},
    {EventType::kReleased, "released"},
    {EventType::kRecolored, "recolored"},
    {EventType::kAnswerSubmitted, "answer_submitted"},
    {EventType::kSessionEnd, "session_end"},
}};

}  // namespace

std::string_view to_string(EventType type) {
  for (const auto& [t, name] : kEventNames) {
    if (t == type) return name;
  }
  return "?";
}

std::optional<EventType> event_type_from_string(std::string_view name) {
  for (const auto& [t, n] : kEventNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

const TraceEvent* Trace::first_of(EventType type) const {
  auto it = std::find_if(events.begin(), events.end(),
                         [type](const TraceEvent& e) { return e.type == type; });
  return it == events.end() ? nullptr : &*it;
}

const Json* Trace::config() const {
  const auto* start = first_of(EventType::kSessionStart);
  if (start == nullptr || !start->config) return nullptr;
  return &*start->config;
}

Seconds Trace::start_time() const {
  if (const auto* start = first_of(EventType::kSessionStart)) return start->t;
  return events.empty() ? 0.0 : events.front().t;
}

Seconds Trace::end_time() const {
  if (const auto* answer = first_of(EventType::kAnswerSubmitted)) return answer->t;
  if (const auto* end = first_of(EventType::kSessionEnd)) return end->t;
  return events.empty() ? 0.0 : events.back().t;
}

std::optional<bool> Trace::correct() const {
  const auto* answer = first_of(EventType::kAnswerSubmitted);
  if (answer == nullptr) return std::nullopt;
  return answer->correct;
}

std::size_t Trace::count(EventType type) const {
  return static_cast<std::size_t>(std::count_if(
      events.begin(), events.end(), [type](const TraceEvent& e) { return e.type == type; }));
}

Json to_json(const TraceEvent& event) {
  Json j;
  j["t"] = event.t;
  j["type"] = std::string(to_string(event.type));
  if (event.req_id) j["req_id"] = *event.req_id;
  if (event.target) j["target"] = *event.target;
  if (event.slot) j["slot"] = *event.slot;
  if (event.answer) j["answer"] = *event.answer;
  if (event.correct) j["correct"] = *event.correct;
  if (event.config) j["config"] = *event.config;
  return j;
}

TraceEvent event_from_json(const Json& object) {
  if (!object.is_object()) throw Error(ErrorCode::kParse, "event is not a JSON object");
  TraceEvent e;
  auto t = object.find("t");
  if (t == object.end() || !t->is_number()) {
    throw Error(ErrorCode::kParse, "event needs a numeric 't'");
  }
  e.t = t->get<double>();
  auto type = object.find("type");
  if (type == object.end() || !type->is_string()) {
    throw Error(ErrorCode::kParse, "event needs a string 'type'");
  }
  auto parsed = event_type_from_string(type->get<std::string>());
  if (!parsed) throw Error(ErrorCode::kParse, "unknown event type '" + type->get<std::string>() + "'");
  e.type = *parsed;
  if (auto it = object.find("req_id"); it != object.end()) {
    if (!it->is_number_unsigned()) throw Error(ErrorCode::kParse, "'req_id' must be a positive integer");
    e.req_id = it->get<ReqId>();
  }
  if (auto it = object.find("target"); it != object.end()) {
    if (!it->is_string()) throw Error(ErrorCode::kParse, "'target' must be a string");
    e.target = it->get<std::string>();
  }
  if (auto it = object.find("slot"); it != object.end()) {
    if (!it->is_number_integer()) throw Error(ErrorCode::kParse, "'slot' must be an integer");
    e.slot = it->get<int>();
  }
  if (auto it = object.find("answer"); it != object.end()) e.answer = *it;
  if (auto it = object.find("correct"); it != object.end()) {
    if (!it->is_boolean()) throw Error(ErrorCode::kParse, "'correct' must be a boolean");
    e.correct = it->get<bool>();
  }
  if (auto it = object.find("config"); it != object.end()) {
    if (!it->is_object()) throw Error(ErrorCode::kParse, "'config' must be an object");
    e.config = *it;
  }
  return e;
}

}  // namespace chronicle::analytics
