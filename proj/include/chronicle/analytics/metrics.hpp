#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chronicle/analytics/trace.hpp"

namespace chronicle::analytics {

inline constexpr Seconds kDefaultFlashWindow = 0.5;

struct MetricReport {
  Seconds completion_time = 0.0;
  bool accuracy = false;
  double concurrency_fraction = 0.0;
  std::size_t out_of_order_count = 0;
  std::size_t mismatch_count = 0;
  std::size_t flashing_count = 0;

  bool operator==(const MetricReport&) const = default;
};

// Share of the completion time during which at least two requests are in
// flight. A request is in flight from request_issued until the first of its
// response_arrived, cancelled or evicted events (or the end of the task).
double concurrency_fraction(const Trace& trace);

// Pairs (i, j) with i issued before j but j's response arriving first.
// Requests without a response are excluded. Sorted by (i, j).
std::vector<std::pair<ReqId, ReqId>> detect_out_of_order(const Trace& trace);

// render_applied events showing an older request than the newest one issued
// by then. Only defined for single-slot policies; empty otherwise.
std::vector<TraceEvent> detect_mismatch(const Trace& trace);

// Pairs of render_applied events on the same slot closer than `window`.
std::size_t detect_flashing(const Trace& trace, Seconds window = kDefaultFlashWindow);

MetricReport compute_metrics(const Trace& trace, Seconds flash_window = kDefaultFlashWindow);

Json to_json(const MetricReport& report);

}  // namespace chronicle::analytics
