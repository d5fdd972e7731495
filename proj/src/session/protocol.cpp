#include "chronicle/session/protocol.hpp"

#include <filesystem>

#include "chronicle/analytics/metrics.hpp"
#include "chronicle/analytics/trace_io.hpp"
#include "chronicle/error.hpp"

namespace chronicle::session {

Json to_json(const RenderDirective& d) {
  Json j;
  j["kind"] = std::string(to_string(d.kind));
  j["req_id"] = d.req_id;
  j["slot"] = d.slot;
  j["at"] = d.at;
  j["target"] = d.target;
  if (d.encoding) {
    j["encoding"] = {{"scheme", std::string(to_string(d.encoding->scheme))},
                     {"level", d.encoding->level}};
  }
  if (d.series) {
    Json series = Json::array();
    for (const auto& p : *d.series) series.push_back({{"x", p.x}, {"value", p.value}});
    j["series"] = std::move(series);
  }
  return j;
}

RenderDirective directive_from_json(const Json& j) {
  try {
    RenderDirective d;
    auto kind = directive_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::kParse, "unknown directive kind");
    d.kind = *kind;
    d.req_id = j.at("req_id").get<ReqId>();
    d.slot = j.at("slot").get<int>();
    d.at = j.at("at").get<double>();
    d.target = j.at("target").get<std::string>();
    if (j.contains("encoding")) {
      const auto& enc = j.at("encoding");
      const auto scheme = enc.at("scheme").get<std::string>();
      if (scheme != "ordinal" && scheme != "categorical") {
        throw Error(ErrorCode::kParse, "unknown encoding scheme '" + scheme + "'");
      }
      d.encoding = EncodingToken{
          scheme == "ordinal" ? EncodingScheme::kOrdinal : EncodingScheme::kCategorical,
          enc.at("level").get<unsigned>()};
    }
    if (j.contains("series")) {
      Series series;
      for (const auto& p : j.at("series")) {
        series.push_back({p.at("x").get<int>(), p.at("value").get<double>()});
      }
      d.series = std::move(series);
    }
    return d;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad directive: ") + e.what());
  }
}

Json error_message(std::string_view code, std::string_view detail) {
  return {{"type", "error"}, {"code", std::string(code)}, {"detail", std::string(detail)}};
}

LiveSession::LiveSession(SessionConfig defaults, std::optional<std::string> trace_dir,
                         std::string label)
    : defaults_(std::move(defaults)), trace_dir_(std::move(trace_dir)), label_(std::move(label)) {}

Seconds LiveSession::session_time(Seconds now) const { return std::max(0.0, now - hello_at_); }

void LiveSession::append(std::vector<Json>& out, const Directives& directives) {
  for (const auto& d : directives) out.push_back({{"type", "render"}, {"directive", to_json(d)}});
}

std::vector<Json> LiveSession::handle_client_text(std::string_view text, Seconds now) {
  Json message;
  try {
    message = Json::parse(text);
  } catch (const Json::parse_error&) {
    return {error_message("malformed", "message is not valid JSON")};
  }
  return handle_client_message(message, now);
}

std::vector<Json> LiveSession::handle_client_message(const Json& message, Seconds now) {
  if (!message.is_object() || !message.contains("type") || !message.at("type").is_string()) {
    return {error_message("malformed", "message must be an object with a string 'type'")};
  }
  const auto type = message.at("type").get<std::string>();
  try {
    if (type == "hello") return on_hello(message, now);
    if (type != "interact" && type != "submit_answer") {
      return {error_message("malformed", "unknown message type '" + type + "'")};
    }
    if (!engine_) return {error_message("protocol", "hello required before '" + type + "'")};
    if (finished_) return {error_message("protocol", "session already finished; send hello")};
    if (type == "interact") return on_interact(message, now);
    return on_submit(message, now);
  } catch (const Error& e) {
    return {error_message(error_code_name(e.code()), e.what())};
  }
}

std::vector<Json> LiveSession::on_hello(const Json& message, Seconds now) {
  const Json config_json = message.value("config", Json::object());
  if (!config_json.is_object()) return {error_message("malformed", "'config' must be an object")};
  if (config_json.contains("agent") && !config_json.at("agent").is_null()) {
    return {error_message("configuration", "live sessions take no agent")};
  }
  auto config = config_from_json(config_json, defaults_);
  config.agent.reset();
  config.pace = Pace::kRealtime;
  auto engine = std::make_unique<SessionEngine>(std::move(config));

  if (engine_ && !finished_) finish(engine_->now());
  engine_ = std::move(engine);
  hello_at_ = now;
  finished_ = false;
  ++sessions_;

  const auto& task = engine_->config().task;
  return {{{"type", "config_ack"},
           {"task_question", task.question()},
           {"facets", task.facets},
           {"policy", to_string(engine_->config().policy)}}};
}

std::vector<Json> LiveSession::on_interact(const Json& message, Seconds now) {
  if (!message.contains("target") || !message.at("target").is_string()) {
    return {error_message("malformed", "interact needs a string 'target'")};
  }
  if (message.contains("client_time") && !message.at("client_time").is_number()) {
    return {error_message("malformed", "'client_time' must be a number")};
  }
  const auto target = message.at("target").get<std::string>();
  if (!engine_->has_target(target)) {
    return {error_message("unknown_facet", "no facet named '" + target + "'")};
  }
  std::vector<Json> out;
  const Seconds t = session_time(now);
  append(out, engine_->advance_until(t));
  const auto before = engine_->directives().size();
  engine_->issue(target, t);
  const auto& all = engine_->directives();
  append(out, Directives(all.begin() + static_cast<std::ptrdiff_t>(before), all.end()));
  return out;
}

std::vector<Json> LiveSession::on_submit(const Json& message, Seconds now) {
  if (!message.contains("answer")) return {error_message("malformed", "submit_answer needs 'answer'")};
  const auto answer = answer_from_json(engine_->config().task.kind, message.at("answer"));
  std::vector<Json> out;
  const Seconds t = session_time(now);
  append(out, engine_->advance_until(t));
  const bool correct = engine_->submit(answer, t);
  finish(t);
  Json summary{{"type", "summary"},
               {"metrics", analytics::to_json(analytics::compute_metrics(engine_->trace()))},
               {"correct", correct}};
  if (last_trace_path_) summary["trace_path"] = *last_trace_path_;
  out.push_back(std::move(summary));
  return out;
}

void LiveSession::finish(Seconds at) {
  engine_->end(at);
  finished_ = true;
  if (!trace_dir_) return;
  std::filesystem::create_directories(*trace_dir_);
  std::string name = label_;
  if (!engine_->config().participant.empty()) name += "-" + engine_->config().participant;
  name += "-s" + std::to_string(sessions_) + ".jsonl";
  const auto path = (std::filesystem::path(*trace_dir_) / name).string();
  analytics::persist_trace(engine_->trace(), path);
  last_trace_path_ = path;
}

std::vector<Json> LiveSession::poll(Seconds now) {
  std::vector<Json> out;
  if (!engine_ || finished_) return out;
  append(out, engine_->advance_until(session_time(now)));
  // now - hello_at_ can round below a due time whose connection time has passed.
  while (auto due = next_due()) {
    if (*due > now) break;
    append(out, engine_->advance_until(*engine_->next_due()));
  }
  return out;
}

std::optional<Seconds> LiveSession::next_due() const {
  if (!engine_ || finished_) return std::nullopt;
  auto due = engine_->next_due();
  if (!due) return std::nullopt;
  return *due + hello_at_;
}

}  // namespace chronicle::session
