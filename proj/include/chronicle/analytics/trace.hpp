#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chronicle/types.hpp"

namespace chronicle::analytics {

using Json = nlohmann::ordered_json;

enum class EventType {
  kSessionStart,
  kRequestIssued,
  kResponseArrived,
  kRenderApplied,
  kSpinnerOn,
  kSpinnerOff,
  kEvicted,
  kCancelled,
  kDroppedResponse,
  kHeld,
  kReleased,
  kRecolored,
  kAnswerSubmitted,
  kSessionEnd,
};

std::string_view to_string(EventType type);
std::optional<EventType> event_type_from_string(std::string_view name);

struct TraceEvent {
  Seconds t = 0.0;
  EventType type = EventType::kSessionStart;
  std::optional<ReqId> req_id;
  std::optional<Target> target;
  std::optional<int> slot;
  std::optional<Json> answer;
  std::optional<bool> correct;
  std::optional<Json> config;

  bool operator==(const TraceEvent&) const = default;
};

// Append-only, time-ordered session log.
struct Trace {
  std::vector<TraceEvent> events;

  const TraceEvent* first_of(EventType type) const;
  const Json* config() const;
  Seconds start_time() const;
  // Time of the submitted answer, else session end, else the last event.
  Seconds end_time() const;
  Seconds completion_time() const { return end_time() - start_time(); }
  std::optional<bool> correct() const;
  std::size_t count(EventType type) const;

  bool operator==(const Trace&) const = default;
};

// One JSON object per event with fields in the fixed order
// t, type, req_id, target, slot, answer, correct, config; absent optionals
// are omitted.
Json to_json(const TraceEvent& event);
// Throws Error(kParse) on a missing or mistyped field.
TraceEvent event_from_json(const Json& object);

}  // namespace chronicle::analytics
