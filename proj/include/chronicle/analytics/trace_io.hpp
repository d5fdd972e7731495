#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "chronicle/analytics/trace.hpp"

namespace chronicle::analytics {

// One JSON object per line, '\n' terminated. Output is byte-deterministic
// for equal traces.
void write_trace(const Trace& trace, std::ostream& out);
void persist_trace(const Trace& trace, const std::string& path);

enum class LoadMode { kStrict, kLenient };

struct LoadedTrace {
  Trace trace;
  // Lenient mode only: the first unreadable line and why. Events before it
  // are kept; everything from it on is discarded.
  std::optional<std::size_t> bad_line;
  std::string issue;
};

// Strict mode throws Error(kParse) naming the 1-based line number.
LoadedTrace read_trace(std::istream& in, LoadMode mode = LoadMode::kStrict,
                       const std::string& name = "<stream>");
LoadedTrace load_trace(const std::string& path, LoadMode mode = LoadMode::kStrict);

}  // namespace chronicle::analytics
