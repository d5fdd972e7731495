#include "chronicle/analytics/trace_io.hpp"

#include <fstream>

#include "chronicle/error.hpp"

namespace chronicle::analytics {

void write_trace(const Trace& trace, std::ostream& out) {
  for (const auto& event : trace.events) out << to_json(event).dump() << '\n';
}

void persist_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write trace '" + path + "'");
  write_trace(trace, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing trace '" + path + "'");
}

namespace {

TraceEvent parse_line(const std::string& line, const std::optional<Seconds>& previous_t) {
  Json object;
  try {
    object = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  auto event = event_from_json(object);
  if (previous_t && event.t < *previous_t) {
    throw Error(ErrorCode::kParse, "event time goes backward");
  }
  return event;
}

}  // namespace

LoadedTrace read_trace(std::istream& in, LoadMode mode, const std::string& name) {
  LoadedTrace loaded;
  std::string line;
  std::size_t number = 0;
  std::optional<Seconds> previous_t;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      auto event = parse_line(line, previous_t);
      previous_t = event.t;
      loaded.trace.events.push_back(std::move(event));
    } catch (const Error& e) {
      const std::string where = name + ":" + std::to_string(number) + ": ";
      if (mode == LoadMode::kStrict) throw Error(ErrorCode::kParse, where + e.what());
      loaded.bad_line = number;
      loaded.issue = where + e.what();
      break;
    }
  }
  return loaded;
}

LoadedTrace load_trace(const std::string& path, LoadMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace '" + path + "'");
  return read_trace(in, mode, path);
}

}  // namespace chronicle::analytics
