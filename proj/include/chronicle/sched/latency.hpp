#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chronicle/sched/rng.hpp"
#include "chronicle/types.hpp"

namespace chronicle::sched {

enum class LatencyKind { kNone, kFixed, kUniform, kTrace };

struct LatencyProfile {
  LatencyKind kind = LatencyKind::kNone;
  Seconds fixed = 0.0;
  Seconds lo = 0.0;
  Seconds hi = 0.0;
  std::vector<Seconds> samples;
  // Where trace samples came from; empty for inline samples.
  std::string source;

  static LatencyProfile none();
  static LatencyProfile fixed_delay(Seconds d);
  static LatencyProfile uniform(Seconds lo, Seconds hi);
  static LatencyProfile trace(std::vector<Seconds> samples, std::string source = {});
};

// Text syntax: none | fixed:S | uniform:LO,HI | trace:PATH (one float per
// line) | trace:inline:S1,S2,...
LatencyProfile parse_latency(std::string_view text);
std::string to_string(const LatencyProfile& profile);
std::vector<Seconds> load_latency_trace(const std::string& path);

// Draws latencies from a profile. Trace profiles are consumed in order.
class LatencySampler {
 public:
  LatencySampler(LatencyProfile profile, Rng rng);

  Seconds sample();
  const LatencyProfile& profile() const { return profile_; }
  std::size_t drawn() const { return drawn_; }

 private:
  LatencyProfile profile_;
  Rng rng_;
  std::size_t drawn_ = 0;
};

// One-shot form; `cursor` indexes into trace samples and is advanced.
Seconds sample_latency(const LatencyProfile& profile, Rng& rng, std::size_t& cursor);

}  // namespace chronicle::sched
