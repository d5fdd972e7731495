#pragma once

#include <cstddef>

#include "chronicle/analytics/trace.hpp"
#include "chronicle/types.hpp"

namespace chronicle::session {

struct ReplayResult {
  // Directives the fresh buffer emitted, in order.
  Directives history;
  // Events compared against the log; 0 without verification.
  std::size_t events_checked = 0;
};

// Feeds the logged requests and response arrivals through a fresh engine
// built from the logged session_start config. With `verify`, every
// regenerated event must equal the logged one; the first difference throws
// Error(kReplayDivergence) naming its 1-based line.
ReplayResult replay(const analytics::Trace& trace, bool verify = true);

}  // namespace chronicle::session
