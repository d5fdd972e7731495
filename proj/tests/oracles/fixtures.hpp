#pragma once

// Random inputs shared by unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "chronicle/buffer.hpp"
#include "chronicle/session/simulation.hpp"
#include "chronicle/text.hpp"
#include "chronicle/workload/task.hpp"

namespace fixtures {

using namespace chronicle;

inline std::vector<Target> months() { return workload::default_facets(); }

inline Series series_of(double value) { return {{2008, value}, {2009, value}}; }

inline PolicySpec random_policy(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<std::size_t> cap(1, 6);
  switch (kind(rng)) {
    case 0: return PolicySpec::blocking();
    case 1: return PolicySpec::naive();
    case 2: return PolicySpec::cumulative();
    case 3: return PolicySpec::small_multiples(cap(rng));
    case 4: return PolicySpec::overlay(cap(rng), EncodingScheme::kOrdinal);
    case 5: return PolicySpec::overlay(cap(rng), EncodingScheme::kCategorical);
    default: {
      std::uniform_real_distribution<double> dwell(0.0, 2.0);
      return PolicySpec::animation(dwell(rng), rng() % 4 != 0);
    }
  }
}

// A random hover schedule on a millisecond grid with millisecond latencies.
struct RandomSchedule {
  std::vector<session::ScriptedHover> hovers;
  std::vector<Seconds> latencies;
  Seconds submit_at = 0.0;
};

inline RandomSchedule random_schedule(std::mt19937_64& rng, std::size_t max_requests = 12,
                                      int max_gap_ms = 2000, int max_latency_ms = 5000) {
  RandomSchedule s;
  std::uniform_int_distribution<std::size_t> count(1, max_requests);
  std::uniform_int_distribution<int> gap(0, max_gap_ms);
  std::uniform_int_distribution<int> latency(0, max_latency_ms);
  std::uniform_int_distribution<std::size_t> facet(0, 11);
  const auto facets = months();
  long t_ms = 0;
  const auto n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    t_ms += gap(rng);
    s.hovers.push_back({static_cast<double>(t_ms) / 1000.0, facets[facet(rng)]});
    s.latencies.push_back(static_cast<double>(latency(rng)) / 1000.0);
  }
  t_ms += gap(rng) + latency(rng) / 2;
  s.submit_at = static_cast<double>(t_ms) / 1000.0;
  return s;
}

inline session::SessionConfig scripted_config(const PolicySpec& policy, const RandomSchedule& s,
                                              std::uint64_t seed = 1) {
  session::SessionConfig config;
  config.policy = policy;
  config.latency = sched::LatencyProfile::trace(s.latencies);
  config.task = workload::TaskSpec{};
  config.seed = seed;
  return config;
}

inline session::SessionSummary run_random(std::mt19937_64& rng, const PolicySpec& policy) {
  const auto s = random_schedule(rng);
  return session::run_scripted(scripted_config(policy, s, rng()), s.hovers,
                               workload::Answer::threshold(false), s.submit_at);
}

}  // namespace fixtures
