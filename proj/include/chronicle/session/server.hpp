#pragma once

#include <memory>
#include <optional>
#include <string>

#include "chronicle/session/config.hpp"

namespace chronicle::session {

// WebSocket front end for live sessions. Each connection gets its own
// LiveSession; one JSON object per text frame in both directions. Runs on a
// single I/O thread.
class Server {
 public:
  struct Options {
    std::string address = "127.0.0.1";
    unsigned short port = 0;  // 0 picks a free port
    SessionConfig defaults;
    std::optional<std::string> trace_dir;
  };

  explicit Server(Options options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // The bound port; valid right after construction.
  unsigned short port() const;
  // Serves until stop() is called.
  void run();
  // Safe to call from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chronicle::session
