#include "chronicle/session/config.hpp"

#include "chronicle/error.hpp"

namespace chronicle::session {

std::string_view to_string(Pace pace) {
  return pace == Pace::kRealtime ? "realtime" : "virtual";
}

Json to_json(const SessionConfig& config) {
  Json j;
  j["policy"] = to_string(config.policy);
  j["latency"] = sched::to_string(config.latency);
  j["task"] = workload::to_string(config.task);
  if (config.agent) j["agent"] = workload::to_string(*config.agent);
  j["seed"] = config.seed;
  j["pace"] = std::string(to_string(config.pace));
  if (!config.participant.empty()) j["participant"] = config.participant;
  return j;
}

namespace {

std::string string_field(const Json& object, const char* key) {
  const auto& v = object.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kConfiguration, std::string("config field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

SessionConfig config_from_json(const Json& object, const SessionConfig& defaults) {
  if (!object.is_object()) throw Error(ErrorCode::kConfiguration, "config must be a JSON object");
  SessionConfig config = defaults;
  if (object.contains("policy")) config.policy = parse_policy(string_field(object, "policy"));
  if (object.contains("latency")) {
    config.latency = sched::parse_latency(string_field(object, "latency"));
  }
  if (object.contains("task")) config.task = workload::parse_task(string_field(object, "task"));
  if (object.contains("agent")) {
    if (object.at("agent").is_null()) {
      config.agent.reset();
    } else {
      config.agent = workload::parse_agent(string_field(object, "agent"));
    }
  }
  if (object.contains("seed")) {
    const auto& seed = object.at("seed");
    if (!seed.is_number_unsigned()) {
      throw Error(ErrorCode::kConfiguration, "config field 'seed' must be a non-negative integer");
    }
    config.seed = seed.get<std::uint64_t>();
  }
  if (object.contains("pace")) {
    const auto pace = string_field(object, "pace");
    if (pace == "virtual") {
      config.pace = Pace::kVirtual;
    } else if (pace == "realtime") {
      config.pace = Pace::kRealtime;
    } else {
      throw Error(ErrorCode::kConfiguration, "pace must be virtual or realtime");
    }
  }
  if (object.contains("participant")) config.participant = string_field(object, "participant");
  return config;
}

}  // namespace chronicle::session
