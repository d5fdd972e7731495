#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chronicle/analytics/trace.hpp"
#include "chronicle/policy.hpp"
#include "chronicle/sched/latency.hpp"
#include "chronicle/workload/agent.hpp"
#include "chronicle/workload/generator.hpp"
#include "chronicle/workload/task.hpp"

namespace chronicle::session {

using analytics::Json;

enum class Pace { kVirtual, kRealtime };

struct SessionConfig {
  PolicySpec policy = PolicySpec::blocking();
  sched::LatencyProfile latency = sched::LatencyProfile::none();
  workload::TaskSpec task;
  std::optional<workload::AgentSpec> agent;
  std::uint64_t seed = 0;
  Pace pace = Pace::kVirtual;
  std::string participant;
  workload::GenerationParams generation;
};

// Serialized with the text syntaxes of each component, e.g.
// {"policy":"multiples:4","latency":"uniform:0,5","task":"threshold:80",
//  "agent":"eager:0.5","seed":7,"pace":"virtual"}
Json to_json(const SessionConfig& config);
// Missing fields keep the values from `defaults`.
SessionConfig config_from_json(const Json& object, const SessionConfig& defaults = {});

std::string_view to_string(Pace pace);

}  // namespace chronicle::session
