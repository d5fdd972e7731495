#include "chronicle/analytics/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "chronicle/error.hpp"
#include "chronicle/policy.hpp"

namespace chronicle::analytics {

double concurrency_fraction(const Trace& trace) {
  const Seconds start = trace.start_time();
  const Seconds end = trace.end_time();
  if (!(end > start)) return 0.0;

  std::map<ReqId, std::pair<Seconds, Seconds>> flight;
  for (const auto& e : trace.events) {
    if (!e.req_id) continue;
    switch (e.type) {
      case EventType::kRequestIssued:
        flight.emplace(*e.req_id, std::make_pair(e.t, end));
        break;
      case EventType::kResponseArrived:
      case EventType::kCancelled:
      case EventType::kEvicted:
        if (auto it = flight.find(*e.req_id); it != flight.end()) {
          it->second.second = std::min(it->second.second, e.t);
        }
        break;
      default:
        break;
    }
  }
  if (flight.size() < 2) return 0.0;

  // Sweep over interval boundaries; ends sort before starts at equal times so
  // back-to-back requests do not overlap.
  std::vector<std::pair<Seconds, int>> edges;
  for (const auto& [id, span] : flight) {
    const Seconds lo = std::max(span.first, start);
    const Seconds hi = std::min(span.second, end);
    if (hi <= lo) continue;
    edges.emplace_back(lo, +1);
    edges.emplace_back(hi, -1);
  }
  std::sort(edges.begin(), edges.end());
  double overlap = 0.0;
  int depth = 0;
  Seconds prev = start;
  for (const auto& [t, delta] : edges) {
    if (depth >= 2) overlap += t - prev;
    depth += delta;
    prev = t;
  }
  return std::clamp(overlap / (end - start), 0.0, 1.0);
}

std::vector<std::pair<ReqId, ReqId>> detect_out_of_order(const Trace& trace) {
  std::set<ReqId> issued;
  for (const auto& e : trace.events) {
    if (e.type == EventType::kRequestIssued && e.req_id) issued.insert(*e.req_id);
  }
  // Walk arrivals in order; every already-arrived later-issued request forms
  // an inversion with the one arriving now.
  std::set<ReqId> arrived;
  std::vector<std::pair<ReqId, ReqId>> pairs;
  for (const auto& e : trace.events) {
    if (e.type != EventType::kResponseArrived || !e.req_id) continue;
    const ReqId id = *e.req_id;
    if (issued.count(id) == 0 || !arrived.insert(id).second) continue;
    for (auto it = arrived.upper_bound(id); it != arrived.end(); ++it) {
      pairs.emplace_back(id, *it);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

bool trace_is_single_slot(const Trace& trace) {
  if (const auto* config = trace.config()) {
    auto it = config->find("policy");
    if (it != config->end() && it->is_string()) {
      try {
        return is_single_slot(parse_policy(it->get<std::string>()).kind);
      } catch (const Error&) {
      }
    }
  }
  return std::all_of(trace.events.begin(), trace.events.end(), [](const TraceEvent& e) {
    return e.type != EventType::kRenderApplied || e.slot.value_or(0) == 0;
  });
}

}  // namespace

std::vector<TraceEvent> detect_mismatch(const Trace& trace) {
  std::vector<TraceEvent> flagged;
  if (!trace_is_single_slot(trace)) return flagged;
  std::optional<ReqId> newest;
  for (const auto& e : trace.events) {
    if (e.type == EventType::kRequestIssued && e.req_id) {
      newest = newest ? std::max(*newest, *e.req_id) : *e.req_id;
    } else if (e.type == EventType::kRenderApplied && e.req_id) {
      if (newest && *e.req_id != *newest) flagged.push_back(e);
    }
  }
  return flagged;
}

std::size_t detect_flashing(const Trace& trace, Seconds window) {
  if (!(window > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "flashing window must be > 0");
  }
  std::map<int, std::vector<Seconds>> renders;
  for (const auto& e : trace.events) {
    if (e.type == EventType::kRenderApplied) renders[e.slot.value_or(0)].push_back(e.t);
  }
  std::size_t count = 0;
  for (auto& [slot, times] : renders) {
    std::sort(times.begin(), times.end());
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < times.size(); ++hi) {
      while (times[hi] - times[lo] >= window) ++lo;
      count += hi - lo;
    }
  }
  return count;
}

MetricReport compute_metrics(const Trace& trace, Seconds flash_window) {
  MetricReport report;
  report.completion_time = trace.completion_time();
  report.accuracy = trace.correct().value_or(false);
  report.concurrency_fraction = concurrency_fraction(trace);
  report.out_of_order_count = detect_out_of_order(trace).size();
  report.mismatch_count = detect_mismatch(trace).size();
  report.flashing_count = detect_flashing(trace, flash_window);
  return report;
}

Json to_json(const MetricReport& report) {
  Json j;
  j["completion_time"] = report.completion_time;
  j["accuracy"] = report.accuracy;
  j["concurrency_fraction"] = report.concurrency_fraction;
  j["out_of_order_count"] = report.out_of_order_count;
  j["mismatch_count"] = report.mismatch_count;
  j["flashing_count"] = report.flashing_count;
  return j;
}

}  // namespace chronicle::analytics
