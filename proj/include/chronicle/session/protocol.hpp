#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chronicle/session/config.hpp"
#include "chronicle/session/engine.hpp"

namespace chronicle::session {

// Wire form of a directive:
// {"kind","req_id","slot","at","target","encoding":{scheme,level}?,"series":[{x,value}]?}
Json to_json(const RenderDirective& directive);
RenderDirective directive_from_json(const Json& object);

Json error_message(std::string_view code, std::string_view detail);

// Transport-independent state of one live connection. `now` is the
// connection's wall-clock time in seconds; session time starts at the most
// recent hello.
//
// Client messages: hello{config}, interact{target, client_time},
// submit_answer{answer}. Server messages: config_ack, render{directive},
// summary{metrics, correct}, error{code, detail}. A bad message produces an
// error reply and leaves the session untouched.
class LiveSession {
 public:
  // `defaults` fills fields the client's hello omits. When `trace_dir` is
  // set, finished sessions are persisted there.
  // `label` prefixes persisted trace file names.
  explicit LiveSession(SessionConfig defaults, std::optional<std::string> trace_dir = {},
                       std::string label = "live");

  std::vector<Json> handle_client_text(std::string_view text, Seconds now);
  std::vector<Json> handle_client_message(const Json& message, Seconds now);
  // Renders everything that became due by `now`.
  std::vector<Json> poll(Seconds now);
  // Connection time of the next internal event, if any.
  std::optional<Seconds> next_due() const;

  bool established() const { return engine_ != nullptr; }
  bool finished() const { return finished_; }
  const SessionEngine* engine() const { return engine_.get(); }
  const std::optional<std::string>& last_trace_path() const { return last_trace_path_; }

 private:
  std::vector<Json> on_hello(const Json& message, Seconds now);
  std::vector<Json> on_interact(const Json& message, Seconds now);
  std::vector<Json> on_submit(const Json& message, Seconds now);
  void finish(Seconds at);
  Seconds session_time(Seconds now) const;
  static void append(std::vector<Json>& out, const Directives& directives);

  SessionConfig defaults_;
  std::optional<std::string> trace_dir_;
  std::string label_;
  std::unique_ptr<SessionEngine> engine_;
  Seconds hello_at_ = 0.0;
  bool finished_ = false;
  std::size_t sessions_ = 0;
  std::optional<std::string> last_trace_path_;
};

}  // namespace chronicle::session
